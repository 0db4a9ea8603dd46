/*!
  \file stitch.hpp
  \brief Cuts a combinational network along a node assignment into standalone parts.
*/

#pragma once

#include "../aig.hpp"
#include "../sequential.hpp"
#include "manifest.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aigpart
{

struct partitioned_network
{
  partition_manifest manifest;
  std::vector<aig_network> parts;
};

/*! \brief Builds one network per part of `assignment` (indexed by node id, AND nodes only).
 *
 * A wire from an AND node d in part A read by part B becomes PO `__cut_n<d>`
 * in A and PI `__cut_n<d>` in B; every consuming part gets its own PI of that
 * name and its own boundary pair. Original PIs are replicated into each part
 * that reads them. An original PO belongs to the part of its driver; POs
 * driven by a PI or a constant go to part 0. Part ids are renumbered densely
 * in ascending order of the ids used by `assignment`.
 */
inline partitioned_network cut_and_stitch( aig_network const& comb, std::vector<std::uint32_t> const& assignment,
                                           sequential_shell const& shell = {} )
{
  if ( comb.num_latches() != 0 )
  {
    throw network_error( "cut_and_stitch expects a combinational network" );
  }
  if ( assignment.size() < comb.size() )
  {
    throw network_error( "assignment does not cover every node" );
  }
  /* dense part ids */
  std::set<std::uint32_t> used;
  for ( auto id = comb.first_and(); id < comb.size(); ++id )
  {
    used.insert( assignment[id] );
  }
  std::map<std::uint32_t, std::uint32_t> dense;
  for ( auto p : used )
  {
    dense.emplace( p, static_cast<std::uint32_t>( dense.size() ) );
  }
  auto const k = std::max<std::uint32_t>( 1, static_cast<std::uint32_t>( dense.size() ) );
  std::vector<std::uint32_t> part_of( comb.size(), 0 );
  for ( auto id = comb.first_and(); id < comb.size(); ++id )
  {
    part_of[id] = dense.at( assignment[id] );
  }

  partitioned_network res;
  auto& man = res.manifest;
  man.model = comb.name();
  man.shell = shell;
  std::set<std::string> seen_names;
  for ( std::uint32_t i = 0; i < comb.num_pis(); ++i )
  {
    man.pis.push_back( comb.pi_name_raw( i ) );
    if ( !seen_names.insert( comb.pi_name( i ) ).second || is_cut_name( comb.pi_name( i ) ) )
    {
      throw network_error( "input name '" + comb.pi_name( i ) + "' is not unique or reserved" );
    }
  }
  seen_names.clear();
  for ( std::uint32_t o = 0; o < comb.num_pos(); ++o )
  {
    if ( !seen_names.insert( comb.po_name( o ) ).second || is_cut_name( comb.po_name( o ) ) )
    {
      throw network_error( "output name '" + comb.po_name( o ) + "' is not unique or reserved" );
    }
  }

  auto owner_of_output = [&]( literal driver ) { return comb.is_and( driver.node() ) ? part_of[driver.node()] : 0u; };

  /* per part: which original PIs, which foreign drivers, which ANDs, which exported nodes */
  std::vector<std::vector<bool>> reads_pi( k, std::vector<bool>( comb.num_pis(), false ) );
  std::vector<std::set<std::uint32_t>> imports( k ), exports( k );
  std::vector<std::vector<std::uint32_t>> members( k );
  auto use = [&]( std::uint32_t p, literal l ) {
    auto const f = l.node();
    if ( comb.is_pi( f ) )
    {
      reads_pi[p][f - 1] = true;
    }
    else if ( comb.is_and( f ) && part_of[f] != p )
    {
      imports[p].insert( f );
      exports[part_of[f]].insert( f );
    }
  };
  for ( auto id = comb.first_and(); id < comb.size(); ++id )
  {
    auto const p = part_of[id];
    members[p].push_back( id );
    use( p, comb.fanin0( id ) );
    use( p, comb.fanin1( id ) );
  }
  for ( auto const& po : comb.pos() )
  {
    use( owner_of_output( po.driver ), po.driver );
  }

  res.parts.resize( k );
  man.pos.resize( comb.num_pos() );
  std::vector<std::map<std::uint32_t, std::uint32_t>> pi_index_of_import( k ), po_index_of_export( k );
  for ( std::uint32_t p = 0; p < k; ++p )
  {
    auto& net = res.parts[p];
    net.set_name( comb.name() );
    part_entry entry;
    entry.id = p;
    entry.file = "part_" + std::to_string( p ) + ".aig";
    std::vector<literal> map( comb.size(), const0 );
    for ( std::uint32_t i = 0; i < comb.num_pis(); ++i )
    {
      if ( reads_pi[p][i] )
      {
        map[comb.pi_node( i )] = net.create_pi( comb.pi_name( i ) );
        entry.pis.push_back( comb.pi_name( i ) );
      }
    }
    for ( auto d : imports[p] )
    {
      pi_index_of_import[p].emplace( d, net.num_pis() );
      map[d] = net.create_pi( cut_wire_name( d ) );
      entry.pis.push_back( cut_wire_name( d ) );
    }
    for ( auto id : members[p] )
    {
      map[id] = net.append_and_raw( detail::map_literal( map, comb.fanin0( id ) ), detail::map_literal( map, comb.fanin1( id ) ) );
      entry.node_map.emplace_back( id, map[id].node() );
    }
    entry.num_ands = net.num_ands();
    res.manifest.parts.push_back( std::move( entry ) );
    /* originals first, then exported wires */
    for ( std::uint32_t o = 0; o < comb.num_pos(); ++o )
    {
      auto const& po = comb.po( o );
      if ( owner_of_output( po.driver ) == p )
      {
        man.pos[o] = { po.name, p, net.num_pos() };
        net.create_po( detail::map_literal( map, po.driver ), comb.po_name( o ) );
        man.parts[p].pos.push_back( comb.po_name( o ) );
      }
    }
    for ( auto d : exports[p] )
    {
      po_index_of_export[p].emplace( d, net.num_pos() );
      net.create_po( map[d], cut_wire_name( d ) );
      man.parts[p].pos.push_back( cut_wire_name( d ) );
    }
  }

  /* boundary pairs, ordered by wire then sink part */
  std::map<std::uint32_t, std::vector<std::uint32_t>> sinks;
  for ( std::uint32_t p = 0; p < k; ++p )
  {
    for ( auto d : imports[p] )
    {
      sinks[d].push_back( p );
    }
  }
  for ( auto const& [d, ps] : sinks )
  {
    auto const driver = part_of[d];
    for ( auto p : ps )
    {
      man.boundary_pairs.push_back( { cut_wire_name( d ), driver, po_index_of_export[driver].at( d ), p,
                                      pi_index_of_import[p].at( d ) } );
    }
  }
  return res;
}

} // namespace aigpart
