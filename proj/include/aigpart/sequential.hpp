/*!
  \file sequential.hpp
  \brief Separation of latches from the combinational core and their re-attachment.
*/

#pragma once

#include "aig.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aigpart
{

inline constexpr std::string_view latch_out_prefix = "__lat_out_";
inline constexpr std::string_view latch_in_prefix = "__lat_in_";

inline std::string latch_out_name( std::uint32_t k )
{
  return std::string( latch_out_prefix ) + std::to_string( k );
}

inline std::string latch_in_name( std::uint32_t k )
{
  return std::string( latch_in_prefix ) + std::to_string( k );
}

/*! \brief What was removed by `extract_comb`: one entry per latch, in latch order. */
struct sequential_shell
{
  struct entry
  {
    std::string name; /* original latch name, possibly empty */
    latch_init init{ latch_init::zero };

    bool operator==( entry const& ) const = default;
  };

  std::vector<entry> latches;

  bool empty() const { return latches.empty(); }
  bool operator==( sequential_shell const& ) const = default;
};

/*! \brief Combinational view: latch k becomes pseudo-PI `__lat_out_k` and pseudo-PO `__lat_in_k`.
 *
 * Latch outputs already follow the PIs in node order, so node ids are preserved.
 */
inline std::pair<aig_network, sequential_shell> extract_comb( aig_network const& net )
{
  aig_network comb;
  sequential_shell shell;
  comb.set_name( net.name() );
  for ( std::uint32_t i = 0; i < net.num_pis(); ++i )
  {
    comb.create_pi( net.pi_name_raw( i ) );
  }
  for ( std::uint32_t k = 0; k < net.num_latches(); ++k )
  {
    comb.create_pi( latch_out_name( k ) );
    shell.latches.push_back( { net.latch_at( k ).name, net.latch_at( k ).init } );
  }
  comb.reserve_ands( net.num_ands() );
  for ( auto const& g : net.gates() )
  {
    comb.append_and_raw( g.fanin0, g.fanin1 );
  }
  for ( auto const& po : net.pos() )
  {
    comb.create_po( po.driver, po.name );
  }
  for ( std::uint32_t k = 0; k < net.num_latches(); ++k )
  {
    comb.create_po( net.latch_at( k ).next, latch_in_name( k ) );
  }
  return { std::move( comb ), std::move( shell ) };
}

/*! \brief Inverse of `extract_comb`; pseudo interface objects are located by name.
 *
 * Throws network_error if a pseudo-PI or pseudo-PO named by the shell is missing.
 */
inline aig_network attach_shell( aig_network const& comb, sequential_shell const& shell )
{
  auto const num_latches = static_cast<std::uint32_t>( shell.latches.size() );
  std::unordered_map<std::string, std::uint32_t> latch_of_pi, latch_of_po;
  for ( std::uint32_t k = 0; k < num_latches; ++k )
  {
    latch_of_pi.emplace( latch_out_name( k ), k );
    latch_of_po.emplace( latch_in_name( k ), k );
  }

  aig_network net;
  net.set_name( comb.name() );
  std::vector<literal> map( comb.size(), const0 );
  std::vector<std::uint32_t> latch_pi( num_latches, 0u );
  std::vector<bool> seen_pi( num_latches, false );
  for ( std::uint32_t i = 0; i < comb.num_pis(); ++i )
  {
    if ( auto it = latch_of_pi.find( comb.pi_name_raw( i ) ); it != latch_of_pi.end() )
    {
      latch_pi[it->second] = comb.pi_node( i );
      seen_pi[it->second] = true;
      continue;
    }
    map[comb.pi_node( i )] = net.create_pi( comb.pi_name_raw( i ) );
  }
  for ( std::uint32_t k = 0; k < num_latches; ++k )
  {
    if ( !seen_pi[k] )
    {
      throw network_error( "missing latch output " + latch_out_name( k ) );
    }
    map[latch_pi[k]] = net.create_latch( shell.latches[k].init, shell.latches[k].name );
  }
  if ( comb.num_latches() != 0 )
  {
    throw network_error( "combinational view still has latches" );
  }
  net.reserve_ands( comb.num_ands() );
  comb.foreach_and( [&]( auto id, auto const& g ) {
    map[id] = net.append_and_raw( map[g.fanin0.node()] ^ g.fanin0.complemented(),
                                  map[g.fanin1.node()] ^ g.fanin1.complemented() );
  } );
  std::vector<bool> seen_po( num_latches, false );
  for ( auto const& po : comb.pos() )
  {
    auto const driver = map[po.driver.node()] ^ po.driver.complemented();
    if ( auto it = latch_of_po.find( po.name ); it != latch_of_po.end() )
    {
      net.set_latch_next( it->second, driver );
      seen_po[it->second] = true;
      continue;
    }
    net.create_po( driver, po.name );
  }
  for ( std::uint32_t k = 0; k < num_latches; ++k )
  {
    if ( !seen_po[k] )
    {
      throw network_error( "missing latch input " + latch_in_name( k ) );
    }
  }
  return net;
}

} // namespace aigpart
