#pragma once

#include <aigpart/aig.hpp>
#include <aigpart/partition/manifest.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace aigpart::test
{

/* Isomorphism of two strashed networks with the same interface order: maps
   every AND of `a` bottom-up through the structural hash of `b`. */
inline bool structurally_isomorphic( aig_network const& a, aig_network b )
{
  if ( a.num_pis() != b.num_pis() || a.num_latches() != b.num_latches() || a.num_pos() != b.num_pos() ||
       a.num_ands() != b.num_ands() )
  {
    return false;
  }
  std::vector<literal> map( a.size(), const0 );
  for ( std::uint32_t i = 1; i < a.first_and(); ++i )
  {
    map[i] = literal{ i, false };
  }
  std::set<std::uint32_t> image;
  bool ok = true;
  a.foreach_and( [&]( auto id, auto const& g ) {
    if ( !ok )
    {
      return;
    }
    auto const hit = b.find_and( map[g.fanin0.node()] ^ g.fanin0.complemented(), map[g.fanin1.node()] ^ g.fanin1.complemented() );
    if ( !hit || hit->complemented() || !b.is_and( hit->node() ) || !image.insert( hit->node() ).second )
    {
      ok = false;
      return;
    }
    map[id] = *hit;
  } );
  if ( !ok )
  {
    return false;
  }
  for ( std::uint32_t o = 0; o < a.num_pos(); ++o )
  {
    auto const d = a.po( o ).driver;
    if ( ( map[d.node()] ^ d.complemented() ) != b.po( o ).driver || a.po_name( o ) != b.po_name( o ) )
    {
      return false;
    }
  }
  for ( std::uint32_t k = 0; k < a.num_latches(); ++k )
  {
    auto const d = a.latch_at( k ).next;
    if ( ( map[d.node()] ^ d.complemented() ) != b.latch_at( k ).next || a.latch_at( k ).init != b.latch_at( k ).init )
    {
      return false;
    }
  }
  return true;
}

/* Connected components of the AND-to-AND graph by breadth-first search;
   returns a component label per AND node, labels ordered by smallest member. */
inline std::vector<std::vector<std::uint32_t>> and_components( aig_network const& net )
{
  std::vector<std::vector<std::uint32_t>> adj( net.size() );
  net.foreach_and( [&]( auto id, auto const& g ) {
    for ( auto f : { g.fanin0.node(), g.fanin1.node() } )
    {
      if ( net.is_and( f ) )
      {
        adj[id].push_back( f );
        adj[f].push_back( id );
      }
    }
  } );
  std::vector<bool> seen( net.size(), false );
  std::vector<std::vector<std::uint32_t>> comps;
  for ( auto id = net.first_and(); id < net.size(); ++id )
  {
    if ( seen[id] )
    {
      continue;
    }
    comps.emplace_back();
    std::queue<std::uint32_t> q;
    q.push( id );
    seen[id] = true;
    while ( !q.empty() )
    {
      auto const n = q.front();
      q.pop();
      comps.back().push_back( n );
      for ( auto m : adj[n] )
      {
        if ( !seen[m] )
        {
          seen[m] = true;
          q.push( m );
        }
      }
    }
    std::sort( comps.back().begin(), comps.back().end() );
  }
  return comps;
}

/* Manifest invariants against the parts: returns an empty string when all hold. */
inline std::string manifest_violation( partition_manifest const& m, std::vector<aig_network> const& parts,
                                       std::uint32_t num_original_ands )
{
  if ( m.parts.size() != parts.size() )
  {
    return "part count";
  }
  std::map<std::pair<std::uint32_t, std::string>, int> pair_count;
  for ( auto const& b : m.boundary_pairs )
  {
    if ( b.driver_part >= parts.size() || b.sink_part >= parts.size() || b.driver_part == b.sink_part )
    {
      return "pair parts " + b.wire;
    }
    if ( parts[b.driver_part].po_name( b.driver_po ) != b.wire || parts[b.sink_part].pi_name( b.sink_pi ) != b.wire )
    {
      return "pair indices " + b.wire;
    }
    ++pair_count[{ b.sink_part, b.wire }];
  }
  for ( std::uint32_t p = 0; p < parts.size(); ++p )
  {
    for ( std::uint32_t i = 0; i < parts[p].num_pis(); ++i )
    {
      auto const name = parts[p].pi_name( i );
      if ( is_cut_name( name ) && pair_count[{ p, name }] != 1 )
      {
        return "boundary input " + name + " not in exactly one pair";
      }
    }
  }
  std::set<std::uint32_t> owned;
  std::uint64_t total = 0;
  for ( std::uint32_t p = 0; p < parts.size(); ++p )
  {
    std::set<std::uint32_t> local;
    for ( auto [o, l] : m.parts[p].node_map )
    {
      if ( !owned.insert( o ).second || !local.insert( l ).second || !parts[p].is_and( l ) )
      {
        return "node map of part " + std::to_string( p );
      }
    }
    if ( local.size() != parts[p].num_ands() )
    {
      return "part " + std::to_string( p ) + " has unmapped ANDs";
    }
    total += parts[p].num_ands();
  }
  if ( total != num_original_ands )
  {
    return "AND coverage";
  }
  return {};
}

} // namespace aigpart::test
