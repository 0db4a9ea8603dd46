/*!
  \file blif.hpp
  \brief Reader for a BLIF subset: .model .inputs .outputs .names .latch .end

  Each `.names` cover (at most 16 inputs) is turned into a truth table and
  then into AND nodes by Shannon expansion.
*/

#pragma once

#include "../aig.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aigpart
{

class blif_error : public std::runtime_error
{
public:
  blif_error( std::string const& msg, std::size_t line )
      : std::runtime_error( "line " + std::to_string( line ) + ": " + msg ), line_( line )
  {
  }
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail
{

struct blif_cover
{
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::uint8_t> tt; /* one byte per minterm */
  std::size_t line{ 0 };
};

inline literal blif_shannon( aig_network& net, std::vector<literal> const& vars, std::vector<std::uint8_t> const& tt,
                             std::size_t offset, std::uint32_t num_vars )
{
  if ( num_vars == 0 )
  {
    return tt[offset] ? const1 : const0;
  }
  auto const half = std::size_t{ 1 } << ( num_vars - 1 );
  bool same = true;
  for ( std::size_t m = 0; m < half && same; ++m )
  {
    same = tt[offset + m] == tt[offset + half + m];
  }
  auto const f0 = blif_shannon( net, vars, tt, offset, num_vars - 1 );
  if ( same )
  {
    return f0;
  }
  auto const f1 = blif_shannon( net, vars, tt, offset + half, num_vars - 1 );
  return net.create_mux( vars[num_vars - 1], f1, f0 );
}

} // namespace detail

inline aig_network parse_blif( std::string_view text )
{
  /* join continuation lines and strip comments */
  std::vector<std::pair<std::string, std::size_t>> lines;
  {
    std::string current;
    std::size_t start_line = 0, line_no = 0;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
      auto end = text.find( '\n', pos );
      if ( end == std::string_view::npos )
      {
        end = text.size();
      }
      std::string raw( text.substr( pos, end - pos ) );
      pos = end + 1;
      ++line_no;
      if ( auto h = raw.find( '#' ); h != std::string::npos )
      {
        raw.erase( h );
      }
      while ( !raw.empty() && ( raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t' ) )
      {
        raw.pop_back();
      }
      if ( current.empty() )
      {
        start_line = line_no;
      }
      bool const cont = !raw.empty() && raw.back() == '\\';
      if ( cont )
      {
        raw.pop_back();
      }
      current += raw;
      if ( cont )
      {
        current.push_back( ' ' );
        continue;
      }
      if ( current.find_first_not_of( " \t" ) != std::string::npos )
      {
        lines.emplace_back( current, start_line );
      }
      current.clear();
      if ( end == text.size() )
      {
        break;
      }
    }
  }

  auto tokenize = []( std::string const& s ) {
    std::vector<std::string> tokens;
    std::istringstream in( s );
    std::string t;
    while ( in >> t )
    {
      tokens.push_back( t );
    }
    return tokens;
  };

  std::string model;
  std::vector<std::string> inputs, outputs;
  struct latch_decl
  {
    std::string input, output;
    latch_init init;
    std::size_t line;
  };
  std::vector<latch_decl> latches;
  std::vector<detail::blif_cover> covers;
  bool ended = false;

  for ( std::size_t i = 0; i < lines.size(); ++i )
  {
    auto const& [line, line_no] = lines[i];
    auto tokens = tokenize( line );
    auto const& cmd = tokens[0];
    if ( ended )
    {
      throw blif_error( "content after .end", line_no );
    }
    if ( cmd == ".model" )
    {
      model = tokens.size() > 1 ? tokens[1] : "";
    }
    else if ( cmd == ".inputs" )
    {
      inputs.insert( inputs.end(), tokens.begin() + 1, tokens.end() );
    }
    else if ( cmd == ".outputs" )
    {
      outputs.insert( outputs.end(), tokens.begin() + 1, tokens.end() );
    }
    else if ( cmd == ".latch" )
    {
      if ( tokens.size() < 3 )
      {
        throw blif_error( ".latch needs input and output", line_no );
      }
      latch_init init = latch_init::zero;
      if ( tokens.size() == 4 || tokens.size() == 6 )
      {
        auto const& v = tokens.back();
        if ( v == "0" )
        {
          init = latch_init::zero;
        }
        else if ( v == "1" )
        {
          init = latch_init::one;
        }
        else if ( v == "2" || v == "3" )
        {
          init = latch_init::undefined;
        }
        else
        {
          throw blif_error( "invalid latch init '" + v + "'", line_no );
        }
      }
      else if ( tokens.size() != 3 && tokens.size() != 5 )
      {
        throw blif_error( "malformed .latch", line_no );
      }
      latches.push_back( { tokens[1], tokens[2], init, line_no } );
    }
    else if ( cmd == ".names" )
    {
      if ( tokens.size() < 2 )
      {
        throw blif_error( ".names needs an output", line_no );
      }
      detail::blif_cover cover;
      cover.inputs.assign( tokens.begin() + 1, tokens.end() - 1 );
      cover.output = tokens.back();
      cover.line = line_no;
      auto const k = cover.inputs.size();
      if ( k > 16 )
      {
        throw blif_error( ".names with more than 16 inputs", line_no );
      }
      cover.tt.assign( std::size_t{ 1 } << k, 0u );
      int polarity = -1;
      while ( i + 1 < lines.size() && lines[i + 1].first.find_first_not_of( " \t" ) != std::string::npos &&
              lines[i + 1].first[lines[i + 1].first.find_first_not_of( " \t" )] != '.' )
      {
        ++i;
        auto row = tokenize( lines[i].first );
        std::string cube = k == 0 ? "" : row[0];
        std::string value = k == 0 ? row[0] : ( row.size() > 1 ? row[1] : "" );
        if ( cube.size() != k || ( value != "0" && value != "1" ) || row.size() != ( k == 0 ? 1u : 2u ) )
        {
          throw blif_error( "malformed cover row", lines[i].second );
        }
        int const v = value == "1" ? 1 : 0;
        if ( polarity != -1 && polarity != v )
        {
          throw blif_error( "cover mixes on-set and off-set rows", lines[i].second );
        }
        polarity = v;
        for ( std::size_t m = 0; m < cover.tt.size(); ++m )
        {
          bool match = true;
          for ( std::size_t b = 0; b < k && match; ++b )
          {
            bool const bit = ( m >> b ) & 1u;
            char const c = cube[b];
            if ( c == '-' )
            {
              continue;
            }
            if ( c != '0' && c != '1' )
            {
              throw blif_error( std::string( "invalid cube character '" ) + c + "'", lines[i].second );
            }
            match = ( c == '1' ) == bit;
          }
          if ( match )
          {
            cover.tt[m] = 1u;
          }
        }
      }
      if ( polarity == 0 )
      {
        for ( auto& b : cover.tt )
        {
          b ^= 1u;
        }
      }
      covers.push_back( std::move( cover ) );
    }
    else if ( cmd == ".end" )
    {
      ended = true;
    }
    else
    {
      throw blif_error( "unsupported construct '" + cmd + "'", line_no );
    }
  }

  aig_network net;
  net.set_name( model );
  std::unordered_map<std::string, literal> signal;
  for ( auto const& name : inputs )
  {
    if ( signal.count( name ) )
    {
      throw blif_error( "signal '" + name + "' defined twice", 0 );
    }
    signal[name] = net.create_pi( name );
  }
  for ( auto const& l : latches )
  {
    if ( signal.count( l.output ) )
    {
      throw blif_error( "signal '" + l.output + "' defined twice", l.line );
    }
    signal[l.output] = net.create_latch( l.init, l.output );
  }
  std::unordered_map<std::string, std::size_t> cover_of;
  for ( std::size_t c = 0; c < covers.size(); ++c )
  {
    if ( signal.count( covers[c].output ) || !cover_of.emplace( covers[c].output, c ).second )
    {
      throw blif_error( "signal '" + covers[c].output + "' defined twice", covers[c].line );
    }
  }

  std::vector<std::uint8_t> state( covers.size(), 0u );
  auto resolve = [&]( std::string const& root, std::size_t line ) -> literal {
    if ( auto it = signal.find( root ); it != signal.end() )
    {
      return it->second;
    }
    auto root_it = cover_of.find( root );
    if ( root_it == cover_of.end() )
    {
      throw blif_error( "undefined signal '" + root + "'", line );
    }
    std::vector<std::size_t> stack{ root_it->second };
    while ( !stack.empty() )
    {
      auto const c = stack.back();
      auto& cover = covers[c];
      if ( state[c] == 2 )
      {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for ( auto const& in : cover.inputs )
      {
        if ( signal.count( in ) )
        {
          continue;
        }
        auto it = cover_of.find( in );
        if ( it == cover_of.end() )
        {
          throw blif_error( "undefined signal '" + in + "'", cover.line );
        }
        if ( state[it->second] == 1 )
        {
          throw blif_error( "combinational cycle through '" + in + "'", cover.line );
        }
        stack.push_back( it->second );
        ready = false;
      }
      if ( !ready )
      {
        state[c] = 1;
        continue;
      }
      std::vector<literal> vars;
      for ( auto const& in : cover.inputs )
      {
        vars.push_back( signal.at( in ) );
      }
      signal[cover.output] =
          detail::blif_shannon( net, vars, cover.tt, 0, static_cast<std::uint32_t>( cover.inputs.size() ) );
      state[c] = 2;
      stack.pop_back();
    }
    return signal.at( root );
  };

  for ( auto const& name : outputs )
  {
    net.create_po( resolve( name, 0 ), name );
  }
  for ( std::uint32_t k = 0; k < latches.size(); ++k )
  {
    net.set_latch_next( k, resolve( latches[k].input, latches[k].line ) );
  }
  return net;
}

} // namespace aigpart
