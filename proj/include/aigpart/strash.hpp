/*!
  \file strash.hpp
  \brief Structural hashing, dangling-node removal and depth computation.
*/

#pragma once

#include "aig.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace aigpart
{

namespace detail
{

/* Copies PIs and latch outputs (with names and init values) into an empty network. */
inline std::vector<literal> copy_interface( aig_network const& src, aig_network& dst )
{
  std::vector<literal> map( src.size(), const0 );
  dst.set_name( src.name() );
  for ( std::uint32_t i = 0; i < src.num_pis(); ++i )
  {
    map[src.pi_node( i )] = dst.create_pi( src.pi_name_raw( i ) );
  }
  for ( std::uint32_t i = 0; i < src.num_latches(); ++i )
  {
    auto const& l = src.latch_at( i );
    map[src.latch_node( i )] = dst.create_latch( l.init, l.name );
  }
  return map;
}

inline literal map_literal( std::vector<literal> const& map, literal l )
{
  return map[l.node()] ^ l.complemented();
}

inline void copy_outputs( aig_network const& src, aig_network& dst, std::vector<literal> const& map )
{
  for ( auto const& po : src.pos() )
  {
    dst.create_po( map_literal( map, po.driver ), po.name );
  }
  for ( std::uint32_t i = 0; i < src.num_latches(); ++i )
  {
    dst.set_latch_next( i, map_literal( map, src.latch_at( i ).next ) );
  }
}

} // namespace detail

/*! \brief Marks AND nodes in the transitive fanin of POs and latch next-states. */
inline std::vector<bool> reachable_nodes( aig_network const& net )
{
  std::vector<bool> mark( net.size(), false );
  for ( auto const& po : net.pos() )
  {
    mark[po.driver.node()] = true;
  }
  for ( auto const& l : net.latches() )
  {
    mark[l.next.node()] = true;
  }
  for ( auto id = net.size(); id-- > net.first_and(); )
  {
    if ( mark[id] )
    {
      mark[net.fanin0( id ).node()] = true;
      mark[net.fanin1( id ).node()] = true;
    }
  }
  return mark;
}

/*! \brief Structural hashing.
 *
 * Rebuilds the network in id order with hashing and constant folding
 * (x&0=0, x&1=x, x&x=x, x&!x=0), dropping nodes that no output reaches.
 * Idempotent: an already hashed network is reproduced node for node.
 */
inline aig_network strash( aig_network const& net )
{
  auto rebuild = []( aig_network const& src ) {
    aig_network res;
    auto map = detail::copy_interface( src, res );
    auto const live = reachable_nodes( src );
    res.reserve_ands( src.num_ands() );
    src.foreach_and( [&]( auto id, auto const& g ) {
      if ( live[id] )
      {
        map[id] = res.create_and( detail::map_literal( map, g.fanin0 ), detail::map_literal( map, g.fanin1 ) );
      }
    } );
    detail::copy_outputs( src, res, map );
    return res;
  };
  /* folding can orphan nodes created earlier in the pass; a second pass over
     a hashed network folds nothing and only drops those */
  auto res = rebuild( net );
  auto const live = reachable_nodes( res );
  for ( auto id = res.first_and(); id < res.size(); ++id )
  {
    if ( !live[id] )
    {
      return rebuild( res );
    }
  }
  return res;
}

namespace detail
{

/* Hashed rebuild of the cones of `roots` in DFS post-order (fanin0 first).
   `fanins(n)` yields the fanin pair of node n; ids need not be topological. */
template<class FaninFn>
void rebuild_dfs( aig_network& res, std::vector<literal>& map, std::uint32_t num_nodes,
                  std::vector<literal> const& roots, FaninFn&& fanins, std::vector<bool> const& is_and )
{
  std::vector<std::uint8_t> state( num_nodes, 0u ); /* 0 new, 1 on stack, 2 done */
  std::vector<std::uint32_t> stack;
  for ( auto root : roots )
  {
    auto const r = root.node();
    if ( !is_and[r] || state[r] == 2 )
    {
      continue;
    }
    stack.push_back( r );
    while ( !stack.empty() )
    {
      auto const n = stack.back();
      if ( state[n] == 2 )
      {
        stack.pop_back();
        continue;
      }
      auto const [f0, f1] = fanins( n );
      if ( state[n] == 0 )
      {
        state[n] = 1;
        /* push fanin1 first so that fanin0 is finished first */
        if ( is_and[f1.node()] && state[f1.node()] == 0 )
        {
          stack.push_back( f1.node() );
        }
        if ( is_and[f0.node()] && state[f0.node()] == 0 )
        {
          stack.push_back( f0.node() );
        }
        continue;
      }
      stack.pop_back();
      map[n] = res.create_and( detail::map_literal( map, f0 ), detail::map_literal( map, f1 ) );
      state[n] = 2;
    }
  }
}

} // namespace detail

/*! \brief Hashed copy with AND nodes renumbered in DFS post-order from POs, then latch inputs. */
inline aig_network reorder_dfs( aig_network const& net )
{
  aig_network res;
  auto map = detail::copy_interface( net, res );
  std::vector<literal> roots;
  for ( auto const& po : net.pos() )
  {
    roots.push_back( po.driver );
  }
  for ( auto const& l : net.latches() )
  {
    roots.push_back( l.next );
  }
  std::vector<bool> is_and( net.size(), false );
  for ( auto id = net.first_and(); id < net.size(); ++id )
  {
    is_and[id] = true;
  }
  detail::rebuild_dfs( res, map, net.size(), roots,
               [&]( std::uint32_t n ) { return std::pair{ net.fanin0( n ), net.fanin1( n ) }; }, is_and );
  detail::copy_outputs( net, res, map );
  return res;
}

/*! \brief Per-node logic levels and the network depth. */
struct level_info
{
  std::vector<std::uint32_t> level;
  std::uint32_t depth{ 0 };
};

/*! \brief Levels: constants and combinational inputs are 0; depth is the max over PO and latch-input drivers. */
inline level_info levels( aig_network const& net )
{
  level_info info;
  info.level.assign( net.size(), 0u );
  net.foreach_and( [&]( auto id, auto const& g ) {
    info.level[id] = 1 + std::max( info.level[g.fanin0.node()], info.level[g.fanin1.node()] );
  } );
  for ( auto const& po : net.pos() )
  {
    info.depth = std::max( info.depth, info.level[po.driver.node()] );
  }
  for ( auto const& l : net.latches() )
  {
    info.depth = std::max( info.depth, info.level[l.next.node()] );
  }
  return info;
}

inline std::uint32_t depth( aig_network const& net )
{
  return levels( net ).depth;
}

} // namespace aigpart
