/*!
  \file balance.hpp
  \brief AND-tree balancing.
*/

#pragma once

#include "../aig.hpp"
#include "../strash.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

namespace aigpart
{

/*! \brief Rebuilds every maximal AND tree (supergate) as a depth-minimal tree.
 *
 * A supergate grows through non-complemented edges into AND nodes with a
 * single reference. Its leaves are combined two at a time, lowest level first
 * (ties by literal value), which minimizes the tree's output level.
 */
inline aig_network balance( aig_network const& net )
{
  if ( net.num_ands() == 0 )
  {
    return net;
  }
  auto const refs = reference_counts( net );
  aig_network res;
  auto map = detail::copy_interface( net, res );
  std::vector<bool> done( net.size(), false );
  for ( std::uint32_t i = 0; i < net.first_and(); ++i )
  {
    done[i] = true;
  }
  std::vector<std::uint32_t> level( res.size(), 0u );
  auto level_of = [&]( literal l ) { return l.node() < level.size() ? level[l.node()] : 0u; };

  auto supergate = [&]( std::uint32_t root ) {
    std::vector<literal> leaves;
    std::vector<literal> stack{ net.fanin1( root ), net.fanin0( root ) };
    while ( !stack.empty() )
    {
      auto const l = stack.back();
      stack.pop_back();
      if ( !l.complemented() && net.is_and( l.node() ) && refs[l.node()] == 1 )
      {
        stack.push_back( net.fanin1( l.node() ) );
        stack.push_back( net.fanin0( l.node() ) );
      }
      else
      {
        leaves.push_back( l );
      }
    }
    return leaves;
  };

  auto build = [&]( std::uint32_t root ) {
    auto leaves = supergate( root );
    using item = std::pair<std::uint32_t, std::uint32_t>; /* level, literal value */
    std::priority_queue<item, std::vector<item>, std::greater<item>> queue;
    std::vector<literal> mapped;
    for ( auto l : leaves )
    {
      mapped.push_back( detail::map_literal( map, l ) );
    }
    std::sort( mapped.begin(), mapped.end() );
    mapped.erase( std::unique( mapped.begin(), mapped.end() ), mapped.end() );
    for ( std::size_t i = 0; i + 1 < mapped.size(); ++i )
    {
      if ( mapped[i].node() == mapped[i + 1].node() )
      {
        return const0;
      }
    }
    if ( !mapped.empty() && mapped[0] == const0 )
    {
      return const0;
    }
    for ( auto l : mapped )
    {
      if ( l != const1 )
      {
        queue.emplace( level_of( l ), l.value );
      }
    }
    if ( queue.empty() )
    {
      return const1;
    }
    while ( queue.size() > 1 )
    {
      auto const a = queue.top();
      queue.pop();
      auto const b = queue.top();
      queue.pop();
      auto const r = res.create_and( literal{ a.second }, literal{ b.second } );
      if ( r.node() >= level.size() )
      {
        level.resize( r.node() + 1, 0u );
        level[r.node()] = 1 + std::max( a.first, b.first );
      }
      queue.emplace( level_of( r ), r.value );
    }
    return literal{ queue.top().second };
  };

  /* post-order over supergate roots, so leaves are mapped before their users */
  std::vector<std::uint32_t> roots;
  for ( auto const& po : net.pos() )
  {
    roots.push_back( po.driver.node() );
  }
  for ( auto const& l : net.latches() )
  {
    roots.push_back( l.next.node() );
  }
  std::vector<std::pair<std::uint32_t, bool>> stack;
  for ( auto r : roots )
  {
    if ( done[r] )
    {
      continue;
    }
    stack.emplace_back( r, false );
    while ( !stack.empty() )
    {
      auto [n, expanded] = stack.back();
      stack.pop_back();
      if ( done[n] )
      {
        continue;
      }
      if ( expanded )
      {
        map[n] = build( n );
        done[n] = true;
        continue;
      }
      stack.emplace_back( n, true );
      auto const leaves = supergate( n );
      for ( auto it = leaves.rbegin(); it != leaves.rend(); ++it )
      {
        if ( !done[it->node()] )
        {
          stack.emplace_back( it->node(), false );
        }
      }
    }
  }
  detail::copy_outputs( net, res, map );
  return strash( res );
}

} // namespace aigpart
