/*!
  \file aiger.hpp
  \brief Reader and writer for the AIGER 1.9 ASCII (`aag`) and binary (`aig`) formats.

  Only the MILOA part of the header is supported; non-zero B, C, J or F
  fields are rejected. The comment section is ignored on input and never
  written.
*/

#pragma once

#include "../aig.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aigpart
{

enum class aiger_format
{
  ascii,
  binary
};

/*! \brief Malformed AIGER input; `offset()` is the byte position of the problem. */
class aiger_error : public std::runtime_error
{
public:
  aiger_error( std::string const& msg, std::size_t offset )
      : std::runtime_error( msg + " (at byte " + std::to_string( offset ) + ")" ), offset_( offset )
  {
  }
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

namespace detail
{

class aiger_cursor
{
public:
  explicit aiger_cursor( std::string_view data ) : data_( data ) {}

  std::size_t pos() const { return pos_; }
  std::size_t size() const { return data_.size(); }
  bool at_end() const { return pos_ >= data_.size(); }
  char peek() const { return data_[pos_]; }

  [[noreturn]] void fail( std::string const& msg ) const { throw aiger_error( msg, pos_ ); }
  [[noreturn]] void fail_at( std::string const& msg, std::size_t at ) const { throw aiger_error( msg, at ); }

  void expect( char c, char const* what )
  {
    if ( at_end() || data_[pos_] != c )
    {
      fail( std::string( "expected " ) + what );
    }
    ++pos_;
  }

  std::uint64_t number( char const* what )
  {
    if ( at_end() || data_[pos_] < '0' || data_[pos_] > '9' )
    {
      fail( std::string( "expected unsigned integer for " ) + what );
    }
    std::uint64_t v = 0;
    auto const* first = data_.data() + pos_;
    auto const [ptr, ec] = std::from_chars( first, data_.data() + data_.size(), v );
    if ( ec != std::errc{} || v > 0xffffffffull )
    {
      fail( std::string( "integer out of range for " ) + what );
    }
    pos_ += static_cast<std::size_t>( ptr - first );
    return v;
  }

  /* binary delta: 7 bits per byte, high bit set on continuation bytes */
  std::uint32_t varint()
  {
    std::uint64_t x = 0;
    unsigned shift = 0;
    while ( true )
    {
      if ( at_end() )
      {
        fail( "unexpected end of binary AND section" );
      }
      auto const ch = static_cast<unsigned char>( data_[pos_++] );
      x |= std::uint64_t{ ch & 0x7fu } << shift;
      if ( !( ch & 0x80u ) )
      {
        break;
      }
      shift += 7;
      if ( shift > 35 )
      {
        fail( "binary delta too long" );
      }
    }
    if ( x > 0xffffffffull )
    {
      fail( "binary delta out of range" );
    }
    return static_cast<std::uint32_t>( x );
  }

  std::string_view rest_of_line()
  {
    auto const start = pos_;
    while ( !at_end() && data_[pos_] != '\n' )
    {
      ++pos_;
    }
    auto const s = data_.substr( start, pos_ - start );
    if ( !at_end() )
    {
      ++pos_;
    }
    return s;
  }

private:
  std::string_view data_;
  std::size_t pos_{ 0 };
};

struct aiger_header
{
  bool binary{ false };
  std::uint32_t m{ 0 }, i{ 0 }, l{ 0 }, o{ 0 }, a{ 0 };
};

inline aiger_header parse_aiger_header( aiger_cursor& in )
{
  aiger_header h;
  auto const start = in.pos();
  std::string magic;
  while ( !in.at_end() && in.peek() != ' ' && in.peek() != '\n' )
  {
    magic.push_back( in.peek() );
    in.expect( in.peek(), "header" );
  }
  if ( magic == "aig" )
  {
    h.binary = true;
  }
  else if ( magic != "aag" )
  {
    in.fail_at( "malformed header: expected 'aag' or 'aig'", start );
  }
  std::uint32_t* fields[] = { &h.m, &h.i, &h.l, &h.o, &h.a };
  char const* names[] = { "M", "I", "L", "O", "A" };
  for ( int k = 0; k < 5; ++k )
  {
    in.expect( ' ', "space in header" );
    *fields[k] = static_cast<std::uint32_t>( in.number( names[k] ) );
  }
  for ( char const* extra : { "B", "C", "J", "F" } )
  {
    if ( in.at_end() || in.peek() != ' ' )
    {
      break;
    }
    in.expect( ' ', "space in header" );
    auto const at = in.pos();
    if ( in.number( extra ) != 0 )
    {
      in.fail_at( std::string( "unsupported non-zero header field " ) + extra, at );
    }
  }
  in.expect( '\n', "end of header line" );
  if ( std::uint64_t{ h.i } + h.l + h.a > h.m )
  {
    in.fail_at( "malformed header: M < I + L + A", start );
  }
  if ( h.m > 2 * in.size() + 16 )
  {
    in.fail_at( "malformed header: M exceeds what the file can define", start );
  }
  if ( h.binary && std::uint64_t{ h.i } + h.l + h.a != h.m )
  {
    in.fail_at( "malformed header: binary format requires M = I + L + A", start );
  }
  return h;
}

inline latch_init parse_latch_init( aiger_cursor& in, std::uint32_t lhs )
{
  if ( in.at_end() || in.peek() != ' ' )
  {
    return latch_init::zero;
  }
  in.expect( ' ', "space" );
  auto const at = in.pos();
  auto const v = in.number( "latch init" );
  if ( v == 0 )
  {
    return latch_init::zero;
  }
  if ( v == 1 )
  {
    return latch_init::one;
  }
  if ( v == lhs )
  {
    return latch_init::undefined;
  }
  in.fail_at( "invalid latch init value", at );
}

/* Parses the symbol table and stops at the comment section. */
inline void parse_symbols( aiger_cursor& in, aig_network& net )
{
  while ( !in.at_end() )
  {
    auto const at = in.pos();
    char const kind = in.peek();
    if ( kind == 'c' )
    {
      return;
    }
    if ( kind == '\n' )
    {
      in.rest_of_line();
      continue;
    }
    if ( kind != 'i' && kind != 'l' && kind != 'o' )
    {
      in.fail( std::string( "unexpected symbol type '" ) + kind + "'" );
    }
    in.expect( kind, "symbol type" );
    auto const index = in.number( "symbol index" );
    in.expect( ' ', "space after symbol index" );
    std::string name( in.rest_of_line() );
    std::uint32_t const limit = kind == 'i' ? net.num_pis() : kind == 'l' ? net.num_latches() : net.num_pos();
    if ( index >= limit )
    {
      in.fail_at( "symbol index out of range", at );
    }
    auto const idx = static_cast<std::uint32_t>( index );
    if ( kind == 'i' )
    {
      net.set_pi_name( idx, std::move( name ) );
    }
    else if ( kind == 'l' )
    {
      net.set_latch_name( idx, std::move( name ) );
    }
    else
    {
      net.set_po_name( idx, std::move( name ) );
    }
  }
}

inline aig_network parse_aiger_binary( aiger_cursor& in, aiger_header const& h )
{
  aig_network net;
  for ( std::uint32_t k = 0; k < h.i; ++k )
  {
    net.create_pi();
  }
  std::uint32_t const max_lit = 2 * h.m + 1;
  struct pending
  {
    std::uint32_t value;
    std::size_t at;
  };
  std::vector<pending> latch_next;
  for ( std::uint32_t k = 0; k < h.l; ++k )
  {
    auto const at = in.pos();
    auto const next = static_cast<std::uint32_t>( in.number( "latch next state" ) );
    auto const init = parse_latch_init( in, 2 * ( h.i + k + 1 ) );
    in.expect( '\n', "end of latch line" );
    if ( next > max_lit )
    {
      in.fail_at( "literal out of range", at );
    }
    net.create_latch( init );
    latch_next.push_back( { next, at } );
  }
  std::vector<pending> outputs;
  for ( std::uint32_t k = 0; k < h.o; ++k )
  {
    auto const at = in.pos();
    auto const lit = static_cast<std::uint32_t>( in.number( "output literal" ) );
    in.expect( '\n', "end of output line" );
    if ( lit > max_lit )
    {
      in.fail_at( "literal out of range", at );
    }
    outputs.push_back( { lit, at } );
  }
  net.reserve_ands( h.a );
  for ( std::uint32_t k = 0; k < h.a; ++k )
  {
    auto const at = in.pos();
    std::uint32_t const lhs = 2 * ( h.i + h.l + k + 1 );
    auto const d0 = in.varint();
    auto const d1 = in.varint();
    if ( d0 == 0 || d0 > lhs )
    {
      in.fail_at( "non-monotone binary delta", at );
    }
    auto const rhs0 = lhs - d0;
    if ( d1 > rhs0 )
    {
      in.fail_at( "non-monotone binary delta", at );
    }
    auto const rhs1 = rhs0 - d1;
    net.append_and_raw( literal{ rhs1 }, literal{ rhs0 } );
  }
  for ( std::uint32_t k = 0; k < h.l; ++k )
  {
    net.set_latch_next( k, literal{ latch_next[k].value } );
  }
  for ( auto const& o : outputs )
  {
    net.create_po( literal{ o.value } );
  }
  parse_symbols( in, net );
  return net;
}

inline aig_network parse_aiger_ascii( aiger_cursor& in, aiger_header const& h )
{
  std::uint32_t const max_lit = 2 * h.m + 1;
  enum class kind : std::uint8_t
  {
    none,
    input,
    latch,
    gate
  };
  std::vector<kind> var_kind( std::size_t{ h.m } + 1, kind::none );
  std::vector<std::uint32_t> var_index( std::size_t{ h.m } + 1, 0u );
  std::vector<std::size_t> var_at( std::size_t{ h.m } + 1, 0u );

  auto define = [&]( std::uint32_t lit, kind k, std::uint32_t index, std::size_t at ) {
    if ( lit > max_lit )
    {
      in.fail_at( "literal out of range", at );
    }
    if ( lit & 1u || lit < 2 )
    {
      in.fail_at( "defined literal must be even and non-constant", at );
    }
    if ( var_kind[lit >> 1] != kind::none )
    {
      in.fail_at( "variable defined twice", at );
    }
    var_kind[lit >> 1] = k;
    var_index[lit >> 1] = index;
    var_at[lit >> 1] = at;
  };

  std::vector<std::uint32_t> inputs( h.i );
  for ( std::uint32_t k = 0; k < h.i; ++k )
  {
    auto const at = in.pos();
    inputs[k] = static_cast<std::uint32_t>( in.number( "input literal" ) );
    in.expect( '\n', "end of input line" );
    define( inputs[k], kind::input, k, at );
  }
  struct latch_line
  {
    std::uint32_t lhs, next;
    latch_init init;
    std::size_t at;
  };
  std::vector<latch_line> latches;
  for ( std::uint32_t k = 0; k < h.l; ++k )
  {
    latch_line ll;
    ll.at = in.pos();
    ll.lhs = static_cast<std::uint32_t>( in.number( "latch literal" ) );
    in.expect( ' ', "space" );
    ll.next = static_cast<std::uint32_t>( in.number( "latch next state" ) );
    ll.init = parse_latch_init( in, ll.lhs );
    in.expect( '\n', "end of latch line" );
    define( ll.lhs, kind::latch, k, ll.at );
    if ( ll.next > max_lit )
    {
      in.fail_at( "literal out of range", ll.at );
    }
    latches.push_back( ll );
  }
  std::vector<std::pair<std::uint32_t, std::size_t>> outputs;
  for ( std::uint32_t k = 0; k < h.o; ++k )
  {
    auto const at = in.pos();
    auto const lit = static_cast<std::uint32_t>( in.number( "output literal" ) );
    in.expect( '\n', "end of output line" );
    if ( lit > max_lit )
    {
      in.fail_at( "literal out of range", at );
    }
    outputs.emplace_back( lit, at );
  }
  struct gate_line
  {
    std::uint32_t lhs, rhs0, rhs1;
    std::size_t at;
  };
  std::vector<gate_line> gates;
  for ( std::uint32_t k = 0; k < h.a; ++k )
  {
    gate_line g;
    g.at = in.pos();
    g.lhs = static_cast<std::uint32_t>( in.number( "AND literal" ) );
    in.expect( ' ', "space" );
    g.rhs0 = static_cast<std::uint32_t>( in.number( "AND fanin" ) );
    in.expect( ' ', "space" );
    g.rhs1 = static_cast<std::uint32_t>( in.number( "AND fanin" ) );
    in.expect( '\n', "end of AND line" );
    define( g.lhs, kind::gate, k, g.at );
    if ( g.rhs0 > max_lit || g.rhs1 > max_lit )
    {
      in.fail_at( "literal out of range", g.at );
    }
    gates.push_back( g );
  }

  auto check_defined = [&]( std::uint32_t lit, std::size_t at ) {
    if ( lit >= 2 && var_kind[lit >> 1] == kind::none )
    {
      in.fail_at( "dangling fanin: literal " + std::to_string( lit ) + " is never defined", at );
    }
  };
  for ( auto const& g : gates )
  {
    check_defined( g.rhs0, g.at );
    check_defined( g.rhs1, g.at );
  }
  for ( auto const& l : latches )
  {
    check_defined( l.next, l.at );
  }
  for ( auto const& [lit, at] : outputs )
  {
    check_defined( lit, at );
  }

  aig_network net;
  std::vector<literal> map( std::size_t{ h.m } + 1, const0 );
  for ( std::uint32_t k = 0; k < h.i; ++k )
  {
    map[inputs[k] >> 1] = net.create_pi();
  }
  for ( auto const& l : latches )
  {
    map[l.lhs >> 1] = net.create_latch( l.init );
  }
  auto to_lit = [&]( std::uint32_t lit ) { return map[lit >> 1] ^ ( ( lit & 1u ) != 0 ); };

  /* emit gates in file order, pulling undefined fanins first (DFS) so ids are topological */
  std::vector<std::uint8_t> state( gates.size(), 0u );
  std::vector<std::uint32_t> stack;
  net.reserve_ands( gates.size() );
  for ( std::uint32_t k = 0; k < gates.size(); ++k )
  {
    if ( state[k] == 2 )
    {
      continue;
    }
    stack.push_back( k );
    while ( !stack.empty() )
    {
      auto const g = stack.back();
      if ( state[g] == 2 )
      {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for ( auto rhs : { gates[g].rhs1, gates[g].rhs0 } )
      {
        auto const v = rhs >> 1;
        if ( rhs >= 2 && var_kind[v] == kind::gate && state[var_index[v]] != 2 )
        {
          if ( state[var_index[v]] == 1 )
          {
            in.fail_at( "combinational cycle through AND literal " + std::to_string( gates[g].lhs ), gates[g].at );
          }
          stack.push_back( var_index[v] );
          ready = false;
        }
      }
      if ( !ready )
      {
        state[g] = 1;
        continue;
      }
      stack.pop_back();
      state[g] = 2;
      map[gates[g].lhs >> 1] = net.append_and_raw( to_lit( gates[g].rhs0 ), to_lit( gates[g].rhs1 ) );
    }
  }
  for ( std::uint32_t k = 0; k < latches.size(); ++k )
  {
    net.set_latch_next( k, to_lit( latches[k].next ) );
  }
  for ( auto const& [lit, at] : outputs )
  {
    net.create_po( to_lit( lit ) );
  }
  parse_symbols( in, net );
  return net;
}

} // namespace detail

/*! \brief Parses an AIGER file image (format detected from the header magic). */
inline aig_network parse_aiger( std::string_view bytes )
{
  detail::aiger_cursor in( bytes );
  auto const h = detail::parse_aiger_header( in );
  return h.binary ? detail::parse_aiger_binary( in, h ) : detail::parse_aiger_ascii( in, h );
}

namespace detail
{

inline void put_varint( std::string& out, std::uint32_t x )
{
  while ( x & ~0x7fu )
  {
    out.push_back( static_cast<char>( ( x & 0x7fu ) | 0x80u ) );
    x >>= 7;
  }
  out.push_back( static_cast<char>( x ) );
}

inline void put_line( std::string& out, std::initializer_list<std::uint32_t> values )
{
  bool first = true;
  for ( auto v : values )
  {
    if ( !first )
    {
      out.push_back( ' ' );
    }
    out += std::to_string( v );
    first = false;
  }
  out.push_back( '\n' );
}

} // namespace detail

/*! \brief Serializes a network; nodes are emitted in id order, so the binary form is canonical. */
inline std::string write_aiger( aig_network const& net, aiger_format format = aiger_format::binary )
{
  std::string out;
  auto const m = net.size() - 1;
  out += format == aiger_format::binary ? "aig " : "aag ";
  detail::put_line( out, { m, net.num_pis(), net.num_latches(), net.num_pos(), net.num_ands() } );
  if ( format == aiger_format::ascii )
  {
    for ( std::uint32_t i = 0; i < net.num_pis(); ++i )
    {
      detail::put_line( out, { 2 * net.pi_node( i ) } );
    }
  }
  for ( std::uint32_t k = 0; k < net.num_latches(); ++k )
  {
    auto const& l = net.latch_at( k );
    auto const lhs = 2 * net.latch_node( k );
    if ( format == aiger_format::ascii )
    {
      out += std::to_string( lhs ) + ' ';
    }
    out += std::to_string( l.next.value );
    if ( l.init == latch_init::one )
    {
      out += " 1";
    }
    else if ( l.init == latch_init::undefined )
    {
      out += ' ' + std::to_string( lhs );
    }
    out.push_back( '\n' );
  }
  for ( auto const& po : net.pos() )
  {
    detail::put_line( out, { po.driver.value } );
  }
  net.foreach_and( [&]( auto id, auto const& g ) {
    auto const lhs = 2 * id;
    if ( format == aiger_format::ascii )
    {
      detail::put_line( out, { lhs, g.fanin1.value, g.fanin0.value } );
    }
    else
    {
      detail::put_varint( out, lhs - g.fanin1.value );
      detail::put_varint( out, g.fanin1.value - g.fanin0.value );
    }
  } );
  for ( std::uint32_t i = 0; i < net.num_pis(); ++i )
  {
    if ( !net.pi_name_raw( i ).empty() )
    {
      out += 'i' + std::to_string( i ) + ' ' + net.pi_name_raw( i ) + '\n';
    }
  }
  for ( std::uint32_t k = 0; k < net.num_latches(); ++k )
  {
    if ( !net.latch_at( k ).name.empty() )
    {
      out += 'l' + std::to_string( k ) + ' ' + net.latch_at( k ).name + '\n';
    }
  }
  for ( std::uint32_t o = 0; o < net.num_pos(); ++o )
  {
    if ( !net.po( o ).name.empty() )
    {
      out += 'o' + std::to_string( o ) + ' ' + net.po( o ).name + '\n';
    }
  }
  return out;
}

/*! \brief I/O failure (file missing, unwritable). */
class io_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw io_error( "cannot open '" + path + "' for reading" );
  }
  return { std::istreambuf_iterator<char>( in ), std::istreambuf_iterator<char>() };
}

inline void write_file( std::string const& path, std::string const& data )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw io_error( "cannot open '" + path + "' for writing" );
  }
  out.write( data.data(), static_cast<std::streamsize>( data.size() ) );
  if ( !out )
  {
    throw io_error( "write to '" + path + "' failed" );
  }
}

inline aiger_format format_for_path( std::string const& path )
{
  return path.size() >= 4 && path.compare( path.size() - 4, 4, ".aag" ) == 0 ? aiger_format::ascii
                                                                            : aiger_format::binary;
}

inline aig_network read_aiger_file( std::string const& path )
{
  return parse_aiger( read_file( path ) );
}

inline void write_aiger_file( std::string const& path, aig_network const& net )
{
  write_file( path, write_aiger( net, format_for_path( path ) ) );
}

} // namespace aigpart
