/*!
  \file manifest.hpp
  \brief Description of a partitioned network: parts, boundary wires and the
         interface needed to reassemble it.
*/

#pragma once

#include "../aig.hpp"
#include "../sequential.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aigpart
{

inline constexpr std::string_view cut_prefix = "__cut_";

/* wire names are derived from the driving node of the original network */
inline std::string cut_wire_name( std::uint32_t node )
{
  return std::string( cut_prefix ) + "n" + std::to_string( node );
}

inline bool is_cut_name( std::string_view name )
{
  return name.substr( 0, cut_prefix.size() ) == cut_prefix;
}

/* interface names as the parts see them; matches aig_network's fallbacks */
inline std::string resolved_pi_name( std::string const& raw, std::uint32_t index )
{
  return raw.empty() ? "i" + std::to_string( index ) : raw;
}

inline std::string resolved_po_name( std::string const& raw, std::uint32_t index )
{
  return raw.empty() ? "o" + std::to_string( index ) : raw;
}

struct part_entry
{
  std::uint32_t id{ 0 };
  std::string file;
  std::uint32_t num_ands{ 0 };
  std::vector<std::string> pis; /* interface in part order */
  std::vector<std::string> pos;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> node_map; /* original AND id -> local id */

  bool operator==( part_entry const& ) const = default;
};

struct boundary_pair
{
  std::string wire;
  std::uint32_t driver_part{ 0 };
  std::uint32_t driver_po{ 0 };
  std::uint32_t sink_part{ 0 };
  std::uint32_t sink_pi{ 0 };

  bool operator==( boundary_pair const& ) const = default;
};

struct output_entry
{
  std::string name; /* raw name in the original network */
  std::uint32_t part{ 0 };
  std::uint32_t po{ 0 }; /* local PO index in that part */

  bool operator==( output_entry const& ) const = default;
};

struct partition_manifest
{
  std::string model;
  std::vector<std::string> pis; /* raw names of the combinational inputs, original order */
  std::vector<output_entry> pos; /* combinational outputs, original order (latch inputs last) */
  sequential_shell shell;
  std::vector<part_entry> parts;
  std::vector<boundary_pair> boundary_pairs;
  std::vector<std::uint32_t> exploded_mffcs; /* roots split below MFFC granularity */
  bool clustering_fallback{ false };

  bool operator==( partition_manifest const& ) const = default;
};

class manifest_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline char const* init_token( latch_init v )
{
  switch ( v )
  {
  case latch_init::zero:
    return "0";
  case latch_init::one:
    return "1";
  default:
    return "x";
  }
}

inline nlohmann::ordered_json to_json( partition_manifest const& m )
{
  using json = nlohmann::ordered_json;
  json j;
  j["model"] = m.model;
  j["pis"] = m.pis;
  j["pos"] = json::array();
  for ( auto const& o : m.pos )
  {
    j["pos"].push_back( { { "name", o.name }, { "part", o.part }, { "po", o.po } } );
  }
  j["latches"] = json::array();
  for ( std::uint32_t k = 0; k < m.shell.latches.size(); ++k )
  {
    auto const& l = m.shell.latches[k];
    j["latches"].push_back(
        { { "name", l.name }, { "init", init_token( l.init ) }, { "out", latch_out_name( k ) }, { "in", latch_in_name( k ) } } );
  }
  j["parts"] = json::array();
  for ( auto const& p : m.parts )
  {
    json nm = json::array();
    for ( auto [o, l] : p.node_map )
    {
      nm.push_back( { o, l } );
    }
    j["parts"].push_back( { { "id", p.id },
                            { "file", p.file },
                            { "num_ands", p.num_ands },
                            { "pis", p.pis },
                            { "pos", p.pos },
                            { "node_map", nm } } );
  }
  j["boundary_pairs"] = json::array();
  for ( auto const& b : m.boundary_pairs )
  {
    j["boundary_pairs"].push_back( { { "wire", b.wire },
                                     { "driver_part", b.driver_part },
                                     { "driver_po", b.driver_po },
                                     { "sink_part", b.sink_part },
                                     { "sink_pi", b.sink_pi } } );
  }
  j["exploded_mffcs"] = m.exploded_mffcs;
  j["clustering_fallback"] = m.clustering_fallback;
  return j;
}

inline partition_manifest manifest_from_json( nlohmann::ordered_json const& j )
{
  partition_manifest m;
  try
  {
    m.model = j.at( "model" ).get<std::string>();
    m.pis = j.at( "pis" ).get<std::vector<std::string>>();
    for ( auto const& o : j.at( "pos" ) )
    {
      m.pos.push_back( { o.at( "name" ).get<std::string>(), o.at( "part" ).get<std::uint32_t>(),
                         o.at( "po" ).get<std::uint32_t>() } );
    }
    for ( auto const& l : j.at( "latches" ) )
    {
      auto const init = l.at( "init" ).get<std::string>();
      if ( init != "0" && init != "1" && init != "x" )
      {
        throw manifest_error( "bad latch init '" + init + "'" );
      }
      m.shell.latches.push_back(
          { l.at( "name" ).get<std::string>(), init == "0" ? latch_init::zero : init == "1" ? latch_init::one : latch_init::undefined } );
    }
    for ( auto const& p : j.at( "parts" ) )
    {
      part_entry e;
      e.id = p.at( "id" ).get<std::uint32_t>();
      e.file = p.at( "file" ).get<std::string>();
      e.num_ands = p.at( "num_ands" ).get<std::uint32_t>();
      e.pis = p.at( "pis" ).get<std::vector<std::string>>();
      e.pos = p.at( "pos" ).get<std::vector<std::string>>();
      for ( auto const& pr : p.at( "node_map" ) )
      {
        e.node_map.emplace_back( pr.at( 0 ).get<std::uint32_t>(), pr.at( 1 ).get<std::uint32_t>() );
      }
      m.parts.push_back( std::move( e ) );
    }
    for ( auto const& b : j.at( "boundary_pairs" ) )
    {
      m.boundary_pairs.push_back( { b.at( "wire" ).get<std::string>(), b.at( "driver_part" ).get<std::uint32_t>(),
                                    b.at( "driver_po" ).get<std::uint32_t>(), b.at( "sink_part" ).get<std::uint32_t>(),
                                    b.at( "sink_pi" ).get<std::uint32_t>() } );
    }
    m.exploded_mffcs = j.at( "exploded_mffcs" ).get<std::vector<std::uint32_t>>();
    m.clustering_fallback = j.at( "clustering_fallback" ).get<bool>();
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw manifest_error( std::string( "malformed manifest: " ) + e.what() );
  }
  return m;
}

inline std::string dump_manifest( partition_manifest const& m )
{
  return to_json( m ).dump( 2 ) + "\n";
}

inline partition_manifest parse_manifest( std::string_view text )
{
  nlohmann::ordered_json j;
  try
  {
    j = nlohmann::ordered_json::parse( text );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw manifest_error( std::string( "malformed manifest: " ) + e.what() );
  }
  return manifest_from_json( j );
}

} // namespace aigpart
