/*!
  \file mffc.hpp
  \brief Maximum fanout-free cones, disjoint MFFC decomposition and the compressed MFFC graph.
*/

#pragma once

#include "aig.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aigpart
{

struct mffc
{
  std::uint32_t root{ 0 };
  std::vector<std::uint32_t> members; /* ascending ids, root included */
  std::vector<literal> leaves;        /* non-complemented frontier literals, ascending */

  bool operator==( mffc const& ) const = default;
};

namespace detail
{

/* Dereferences the cone below `root`; nodes whose count drops to zero and that
   pass `may_join` are collected. Counts are left decremented. */
template<class Pred>
void deref_cone( aig_network const& net, std::vector<std::uint32_t>& refs, std::uint32_t root,
                 std::vector<std::uint32_t>& members, Pred&& may_join )
{
  std::vector<std::uint32_t> stack{ root };
  members.push_back( root );
  while ( !stack.empty() )
  {
    auto const n = stack.back();
    stack.pop_back();
    for ( auto f : { net.fanin0( n ).node(), net.fanin1( n ).node() } )
    {
      if ( --refs[f] == 0 && net.is_and( f ) && may_join( f ) )
      {
        members.push_back( f );
        stack.push_back( f );
      }
    }
  }
}

inline std::vector<literal> frontier( aig_network const& net, std::vector<std::uint32_t> const& sorted_members )
{
  std::vector<literal> leaves;
  for ( auto n : sorted_members )
  {
    for ( auto f : { net.fanin0( n ).node(), net.fanin1( n ).node() } )
    {
      if ( !std::binary_search( sorted_members.begin(), sorted_members.end(), f ) )
      {
        leaves.emplace_back( f, false );
      }
    }
  }
  std::sort( leaves.begin(), leaves.end() );
  leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );
  return leaves;
}

} // namespace detail

/*! \brief MFFC of AND node `v` by the dereference walk; `refs` is restored before returning. */
inline mffc compute_mffc( aig_network const& net, std::vector<std::uint32_t>& refs, std::uint32_t v )
{
  if ( !net.is_and( v ) )
  {
    throw std::invalid_argument( "node " + std::to_string( v ) + " is not an AND node and has no MFFC" );
  }
  mffc res;
  res.root = v;
  detail::deref_cone( net, refs, v, res.members, []( auto ) { return true; } );
  for ( auto n : res.members )
  {
    ++refs[net.fanin0( n ).node()];
    ++refs[net.fanin1( n ).node()];
  }
  std::sort( res.members.begin(), res.members.end() );
  res.leaves = detail::frontier( net, res.members );
  return res;
}

inline mffc compute_mffc( aig_network const& net, std::uint32_t v )
{
  auto refs = reference_counts( net );
  return compute_mffc( net, refs, v );
}

struct mffc_decomposition
{
  static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

  std::vector<mffc> mffcs;
  std::vector<std::uint32_t> owner; /* node id -> mffc index, `none` for non-AND nodes */
};

/*! \brief Disjoint MFFC cover.
 *
 * PO drivers are roots in PO order (latch next-states after POs). Removing a
 * cone exposes its frontier nodes as new outputs; these are processed in
 * descending id order. AND nodes no output reaches are rooted last, also in
 * descending id order.
 */
inline mffc_decomposition decompose( aig_network const& net )
{
  mffc_decomposition dec;
  dec.owner.assign( net.size(), mffc_decomposition::none );
  auto refs = reference_counts( net );
  std::vector<bool> exposed( net.size(), false );
  std::priority_queue<std::uint32_t> pending;

  auto expose = [&]( std::uint32_t n ) {
    if ( net.is_and( n ) && !exposed[n] && dec.owner[n] == mffc_decomposition::none )
    {
      exposed[n] = true;
      ++refs[n]; /* pseudo output reference keeps it out of other cones */
      return true;
    }
    return false;
  };

  auto take = [&]( std::uint32_t root ) {
    auto const index = static_cast<std::uint32_t>( dec.mffcs.size() );
    mffc m;
    m.root = root;
    dec.owner[root] = index;
    detail::deref_cone( net, refs, root, m.members, [&]( std::uint32_t f ) {
      if ( dec.owner[f] != mffc_decomposition::none )
      {
        return false;
      }
      dec.owner[f] = index;
      return true;
    } );
    std::sort( m.members.begin(), m.members.end() );
    m.leaves = detail::frontier( net, m.members );
    for ( auto l : m.leaves )
    {
      if ( expose( l.node() ) )
      {
        pending.push( l.node() );
      }
    }
    dec.mffcs.push_back( std::move( m ) );
  };

  std::vector<std::uint32_t> output_roots;
  for ( auto const& po : net.pos() )
  {
    output_roots.push_back( po.driver.node() );
  }
  for ( auto const& l : net.latches() )
  {
    output_roots.push_back( l.next.node() );
  }
  for ( auto r : output_roots )
  {
    expose( r );
  }
  for ( auto r : output_roots )
  {
    if ( net.is_and( r ) && dec.owner[r] == mffc_decomposition::none )
    {
      take( r );
    }
  }
  auto drain = [&]() {
    while ( !pending.empty() )
    {
      auto const r = pending.top();
      pending.pop();
      if ( dec.owner[r] == mffc_decomposition::none )
      {
        take( r );
      }
    }
  };
  drain();
  for ( auto id = net.size(); id-- > net.first_and(); )
  {
    if ( dec.owner[id] == mffc_decomposition::none )
    {
      take( id );
      drain();
    }
  }
  return dec;
}

/*! \brief Containment property: if w is in MFFC_v then MFFC_w is a subset of MFFC_v. */
inline bool containment_check( aig_network const& net, std::uint32_t v, std::uint32_t w )
{
  auto refs = reference_counts( net );
  auto const mv = compute_mffc( net, refs, v );
  if ( !std::binary_search( mv.members.begin(), mv.members.end(), w ) )
  {
    return true;
  }
  auto const mw = compute_mffc( net, refs, w );
  return std::includes( mv.members.begin(), mv.members.end(), mw.members.begin(), mw.members.end() );
}

struct compressed_graph
{
  struct edge
  {
    std::uint32_t src;
    std::uint32_t dst;
    std::uint32_t weight;

    bool operator==( edge const& ) const = default;
  };

  std::vector<std::uint32_t> vertex_weight; /* one vertex per MFFC, weight = member count */
  std::vector<edge> edges;                  /* sorted by (src, dst) */

  std::uint32_t num_vertices() const { return static_cast<std::uint32_t>( vertex_weight.size() ); }
};

/*! \brief Quotient of the AND graph by the decomposition.
 *
 * The weight of edge (src, dst) is the number of fanin connections from a member
 * of src into a member of dst. PIs are not vertices.
 */
inline compressed_graph build_compressed_graph( aig_network const& net, mffc_decomposition const& dec )
{
  compressed_graph g;
  for ( auto const& m : dec.mffcs )
  {
    g.vertex_weight.push_back( static_cast<std::uint32_t>( m.members.size() ) );
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pins;
  net.foreach_and( [&]( auto id, auto const& gate ) {
    auto const dst = dec.owner[id];
    for ( auto f : { gate.fanin0.node(), gate.fanin1.node() } )
    {
      auto const src = dec.owner[f];
      if ( src != mffc_decomposition::none && src != dst )
      {
        pins.emplace_back( src, dst );
      }
    }
  } );
  std::sort( pins.begin(), pins.end() );
  for ( std::size_t i = 0; i < pins.size(); )
  {
    auto j = i;
    while ( j < pins.size() && pins[j] == pins[i] )
    {
      ++j;
    }
    g.edges.push_back( { pins[i].first, pins[i].second, static_cast<std::uint32_t>( j - i ) } );
    i = j;
  }
  return g;
}

/*! \brief Debug dump: one `src dst weight` line per edge. */
inline std::string dump_edges( compressed_graph const& g )
{
  std::ostringstream out;
  for ( auto const& e : g.edges )
  {
    out << e.src << ' ' << e.dst << ' ' << e.weight << '\n';
  }
  return out.str();
}

/*! \brief Debug dump: one `vertex weight` line per vertex. */
inline std::string dump_vertex_weights( compressed_graph const& g )
{
  std::ostringstream out;
  for ( std::uint32_t v = 0; v < g.num_vertices(); ++v )
  {
    out << v << ' ' << g.vertex_weight[v] << '\n';
  }
  return out.str();
}

} // namespace aigpart
