/*!
  \file cluster.hpp
  \brief Boundary clustering, workload estimation and first-fit-decreasing packing.
*/

#pragma once

#include "../aig.hpp"
#include "../sequential.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace aigpart
{

struct partition_config
{
  std::uint32_t max_part_size{ 10000 };
  double epsilon{ 0.05 };
  /* clustering fails when the largest cluster exceeds this multiple of
     max_part_size and there are fewer clusters than parts needed */
  double fallback_threshold{ 2.0 };
  /* force at least this many parts when the network is large enough */
  std::uint32_t min_parts{ 1 };
  std::uint64_t seed{ 1 };

  void validate() const
  {
    if ( max_part_size < 1 )
    {
      throw std::invalid_argument( "max_part_size must be at least 1" );
    }
    if ( !( epsilon >= 0.0 && epsilon < 1.0 ) )
    {
      throw std::invalid_argument( "epsilon must lie in [0, 1)" );
    }
  }
};

struct cluster
{
  std::vector<std::uint32_t> members; /* AND node ids, ascending */
  std::uint64_t workload{ 0 };
};

namespace detail
{

class union_find
{
public:
  explicit union_find( std::uint32_t n ) : parent_( n )
  {
    std::iota( parent_.begin(), parent_.end(), 0u );
  }

  std::uint32_t find( std::uint32_t x )
  {
    while ( parent_[x] != x )
    {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /* the smaller root wins, which keeps labels deterministic */
  void unite( std::uint32_t a, std::uint32_t b )
  {
    a = find( a );
    b = find( b );
    if ( a != b )
    {
      parent_[std::max( a, b )] = std::min( a, b );
    }
  }

private:
  std::vector<std::uint32_t> parent_;
};

} // namespace detail

/*! \brief Node count plus depth of the subnetwork induced by `members`. */
inline std::uint64_t estimate_workload( std::vector<std::uint32_t> const& members, aig_network const& net )
{
  std::vector<std::uint32_t> level( net.size(), 0 );
  std::uint32_t depth = 0;
  for ( auto n : members ) /* ascending ids are topological */
  {
    level[n] = 1 + std::max( level[net.fanin0( n ).node()], level[net.fanin1( n ).node()] );
    depth = std::max( depth, level[n] );
  }
  return members.size() + depth;
}

inline std::uint64_t estimate_workload( cluster const& c, aig_network const& net )
{
  return estimate_workload( c.members, net );
}

/*! \brief Connected components of the AND-to-AND support graph.
 *
 * The first reverse-topological sweep hands every unlabeled node a fresh
 * label and pushes it down to unlabeled AND fanins, uniting labels where they
 * meet. The second sweep resolves every node to its representative. PIs and
 * latch pseudo-PIs carry no label, so they sever connectivity. Clusters are
 * ordered by their smallest member id.
 */
inline std::vector<cluster> cluster_by_boundaries( aig_network const& comb, sequential_shell const& = {} )
{
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label( comb.size(), none );
  std::uint32_t next = 0;
  for ( auto id = comb.size(); id-- > comb.first_and(); )
  {
    if ( label[id] == none )
    {
      label[id] = next++;
    }
    for ( auto f : { comb.fanin0( id ).node(), comb.fanin1( id ).node() } )
    {
      if ( comb.is_and( f ) && label[f] == none )
      {
        label[f] = label[id];
      }
    }
  }
  detail::union_find uf( next );
  for ( auto id = comb.size(); id-- > comb.first_and(); )
  {
    for ( auto f : { comb.fanin0( id ).node(), comb.fanin1( id ).node() } )
    {
      if ( comb.is_and( f ) )
      {
        uf.unite( label[id], label[f] );
      }
    }
  }
  std::vector<std::uint32_t> index( next, none );
  std::vector<cluster> clusters;
  for ( auto id = comb.first_and(); id < comb.size(); ++id )
  {
    auto const r = uf.find( label[id] );
    if ( index[r] == none )
    {
      index[r] = static_cast<std::uint32_t>( clusters.size() );
      clusters.emplace_back();
    }
    clusters[index[r]].members.push_back( id );
  }
  for ( auto& c : clusters )
  {
    c.workload = estimate_workload( c, comb );
  }
  return clusters;
}

struct cluster_group
{
  std::vector<std::uint32_t> clusters; /* indices into the cluster list */
  std::uint64_t num_nodes{ 0 };
  std::uint64_t workload{ 0 };
  bool oversized{ false };
};

/*! \brief First-fit-decreasing by workload into bins of max_part_size nodes.
 *
 * Clusters above the cap become singleton groups flagged `oversized`.
 * Ties in workload are broken by cluster index.
 */
inline std::vector<cluster_group> pack_clusters( std::vector<cluster> const& clusters, partition_config const& cfg )
{
  std::vector<std::uint32_t> order( clusters.size() );
  std::iota( order.begin(), order.end(), 0u );
  std::stable_sort( order.begin(), order.end(),
                    [&]( auto a, auto b ) { return clusters[a].workload > clusters[b].workload; } );
  std::vector<cluster_group> bins, oversized;
  for ( auto c : order )
  {
    auto const size = clusters[c].members.size();
    if ( size > cfg.max_part_size )
    {
      oversized.push_back( { { c }, size, clusters[c].workload, true } );
      continue;
    }
    auto it = std::find_if( bins.begin(), bins.end(),
                            [&]( auto const& b ) { return b.num_nodes + size <= cfg.max_part_size; } );
    if ( it == bins.end() )
    {
      bins.emplace_back();
      it = std::prev( bins.end() );
    }
    it->clusters.push_back( c );
    it->num_nodes += size;
    it->workload += clusters[c].workload;
  }
  bins.insert( bins.end(), oversized.begin(), oversized.end() );
  return bins;
}

} // namespace aigpart
