/*!
  \file oversized.hpp
  \brief k-way partitioning of a sub-netlist on its MFFC graph.
*/

#pragma once

#include "../aig.hpp"
#include "../mffc.hpp"
#include "cluster.hpp"
#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace aigpart
{

struct oversized_result
{
  std::vector<std::uint32_t> part;          /* per node id of the network; none for non-members */
  std::uint32_t k{ 1 };                      /* parts actually used to meet the cap */
  std::uint64_t cap{ 0 };                    /* part weight bound that was enforced */
  std::uint64_t cut{ 0 };                    /* fanin pins crossing parts */
  std::vector<std::uint32_t> exploded_roots; /* MFFCs heavier than the cap, split node by node */

  static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
};

/*! \brief Largest part weight allowed for `total` nodes in `k` parts. */
inline std::uint64_t part_cap( std::uint64_t total, std::uint32_t k, partition_config const& cfg )
{
  auto const avg = ( total + k - 1 ) / k;
  auto const relaxed = static_cast<std::uint64_t>( std::floor( ( 1.0 + cfg.epsilon ) * static_cast<double>( avg ) ) );
  return std::max<std::uint64_t>( 1, std::min<std::uint64_t>( relaxed, cfg.max_part_size ) );
}

namespace detail
{

/* MFFC vertices of `members`; MFFCs above `cap` contribute one vertex per node. */
struct mffc_vertices
{
  weighted_graph graph;
  std::vector<std::uint32_t> vertex_of; /* node id -> vertex */
  std::vector<std::uint32_t> exploded_roots;
};

inline mffc_vertices build_mffc_vertices( aig_network const& net, mffc_decomposition const& dec,
                                          std::vector<std::uint32_t> const& members, std::uint64_t cap )
{
  constexpr auto none = oversized_result::none;
  mffc_vertices res;
  res.vertex_of.assign( net.size(), none );
  std::vector<std::uint32_t> vertex_of_mffc( dec.mffcs.size(), none );
  std::vector<std::uint64_t> weights;
  for ( auto n : members )
  {
    auto const m = dec.owner[n];
    auto const& cone = dec.mffcs[m];
    if ( cone.members.size() > cap )
    {
      if ( n == cone.root )
      {
        res.exploded_roots.push_back( n );
      }
      res.vertex_of[n] = static_cast<std::uint32_t>( weights.size() );
      weights.push_back( 1 );
      continue;
    }
    if ( vertex_of_mffc[m] == none )
    {
      vertex_of_mffc[m] = static_cast<std::uint32_t>( weights.size() );
      weights.push_back( cone.members.size() );
    }
    res.vertex_of[n] = vertex_of_mffc[m];
  }
  std::sort( res.exploded_roots.begin(), res.exploded_roots.end() );
  std::vector<weighted_graph::edge> edges;
  for ( auto n : members )
  {
    for ( auto f : { net.fanin0( n ).node(), net.fanin1( n ).node() } )
    {
      if ( res.vertex_of[f] != none && res.vertex_of[f] != res.vertex_of[n] )
      {
        edges.push_back( { res.vertex_of[f], res.vertex_of[n], 1 } );
      }
    }
  }
  res.graph = weighted_graph( std::move( weights ), edges );
  return res;
}

} // namespace detail

/*! \brief Splits `members` (ascending AND ids) into parts of at most the cap.
 *
 * Starts at k = max(k_min, ceil(|members| / max_part_size)) and increases k
 * while the MFFC granularity makes the cap infeasible.
 */
inline oversized_result partition_oversized( aig_network const& net, mffc_decomposition const& dec,
                                             std::vector<std::uint32_t> const& members, partition_config const& cfg,
                                             std::uint32_t k_min = 1 )
{
  cfg.validate();
  oversized_result res;
  res.part.assign( net.size(), oversized_result::none );
  auto const total = static_cast<std::uint64_t>( members.size() );
  if ( total == 0 )
  {
    return res;
  }
  auto k = static_cast<std::uint32_t>( std::max<std::uint64_t>( k_min, ( total + cfg.max_part_size - 1 ) / cfg.max_part_size ) );
  k = static_cast<std::uint32_t>( std::min<std::uint64_t>( k, total ) );
  while ( true )
  {
    auto const cap = part_cap( total, k, cfg );
    auto const mv = detail::build_mffc_vertices( net, dec, members, cap );
    auto const kw = partition_graph( mv.graph, k, cap, cfg.seed );
    if ( kw.feasible || k >= total )
    {
      res.k = k;
      res.cap = cap;
      res.cut = kw.cut;
      res.exploded_roots = mv.exploded_roots;
      for ( auto n : members )
      {
        res.part[n] = kw.part[mv.vertex_of[n]];
      }
      return res;
    }
    ++k;
  }
}

/*! \brief Whole-network form: every AND node is a member. */
inline oversized_result partition_oversized( aig_network const& net, partition_config const& cfg, std::uint32_t k_min = 1 )
{
  auto const dec = decompose( net );
  std::vector<std::uint32_t> members;
  for ( auto id = net.first_and(); id < net.size(); ++id )
  {
    members.push_back( id );
  }
  return partition_oversized( net, dec, members, cfg, k_min );
}

} // namespace aigpart
