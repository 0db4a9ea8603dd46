/*!
  \file local.hpp
  \brief Shared machinery of the local resynthesis passes: cone truth tables,
         bounded MFFC dereferencing and dry-run gain evaluation of a candidate cone.
*/

#pragma once

#include "../detail/mutable_aig.hpp"
#include "../resynth.hpp"
#include "../truth_table.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace aigpart::detail
{

/* Truth table of `root` over `leaves` (variable i = leaves[i]); nullopt when the
   cone of `root` is not bounded by the leaves. */
inline std::optional<truth_table> cone_function( mutable_aig const& m, std::uint32_t root,
                                                 std::span<std::uint32_t const> leaves, std::uint32_t num_vars )
{
  std::unordered_map<std::uint32_t, truth_table> value;
  value.reserve( 32 );
  for ( std::uint32_t i = 0; i < leaves.size(); ++i )
  {
    value.emplace( leaves[i], truth_table::nth_var( num_vars, i ) );
  }
  std::vector<std::uint32_t> stack{ root };
  while ( !stack.empty() )
  {
    auto const n = stack.back();
    if ( value.count( n ) )
    {
      stack.pop_back();
      continue;
    }
    if ( !m.is_live_and( n ) )
    {
      return std::nullopt;
    }
    auto const a = m.fanin0( n ), b = m.fanin1( n );
    auto ia = value.find( a.node() ), ib = value.find( b.node() );
    if ( ia != value.end() && ib != value.end() )
    {
      auto const& ta = ia->second;
      auto const& tb = ib->second;
      value.emplace( n, ( a.complemented() ? ~ta : ta ) & ( b.complemented() ? ~tb : tb ) );
      stack.pop_back();
      continue;
    }
    if ( stack.size() > 4096 )
    {
      return std::nullopt;
    }
    if ( ia == value.end() )
    {
      stack.push_back( a.node() );
    }
    if ( ib == value.end() )
    {
      stack.push_back( b.node() );
    }
  }
  return value.at( root );
}

/* Dereferences the cone of `root` stopping at `leaves`; returns the freed nodes
   (root included). Undo with `reref_cone`. */
inline std::vector<std::uint32_t> deref_cone( mutable_aig& m, std::uint32_t root, std::span<std::uint32_t const> leaves )
{
  for ( auto l : leaves )
  {
    ++m.ref_slot( l );
  }
  std::vector<std::uint32_t> freed{ root };
  for ( std::size_t i = 0; i < freed.size(); ++i )
  {
    auto const n = freed[i];
    for ( auto f : { m.fanin0( n ).node(), m.fanin1( n ).node() } )
    {
      if ( --m.ref_slot( f ) == 0 && m.is_and( f ) )
      {
        freed.push_back( f );
      }
    }
  }
  return freed;
}

inline void reref_cone( mutable_aig& m, std::vector<std::uint32_t> const& freed, std::span<std::uint32_t const> leaves )
{
  for ( auto n : freed )
  {
    ++m.ref_slot( m.fanin0( n ).node() );
    ++m.ref_slot( m.fanin1( n ).node() );
  }
  for ( auto l : leaves )
  {
    --m.ref_slot( l );
  }
}

struct cone_eval
{
  bool valid{ false };
  std::uint32_t added{ 0 };
  std::uint32_t level{ 0 };
};

/* Dry run of inlining `cone` over `leaf_lits` while the MFFC of `root` is
   dereferenced: counts nodes that would be created (a hit on a freed node
   counts too, it is kept alive only by the new cone). Invalid when an inner
   step lands on `root` (would create a cycle) or the cone is `root` itself. */
inline cone_eval evaluate_cone( mutable_aig const& m, aig_network const& cone, std::span<literal const> leaf_lits,
                                std::uint32_t root )
{
  cone_eval ev;
  std::vector<std::optional<literal>> map( cone.size() );
  std::vector<std::uint32_t> lev( cone.size(), 0u );
  map[0] = const0;
  for ( std::uint32_t i = 0; i < cone.num_pis(); ++i )
  {
    auto const l = i < leaf_lits.size() ? leaf_lits[i] : const0;
    map[cone.pi_node( i )] = l;
    lev[cone.pi_node( i )] = m.level( l.node() );
  }
  auto const out = cone.po( 0 ).driver;
  bool cycle = false;
  cone.foreach_and( [&]( auto id, auto const& g ) {
    auto const& a = map[g.fanin0.node()];
    auto const& b = map[g.fanin1.node()];
    auto const la = lev[g.fanin0.node()], lb = lev[g.fanin1.node()];
    if ( a && b )
    {
      if ( auto hit = m.find_and( *a ^ g.fanin0.complemented(), *b ^ g.fanin1.complemented() ) )
      {
        map[id] = *hit;
        auto const h = hit->node();
        if ( h == root && id != out.node() )
        {
          cycle = true;
        }
        if ( m.is_and( h ) && m.refs( h ) == 0 && h != root )
        {
          ++ev.added;
        }
        lev[id] = m.level( h );
        return;
      }
    }
    ++ev.added;
    lev[id] = 1 + std::max( la, lb );
  } );
  if ( cycle )
  {
    return ev;
  }
  if ( map[out.node()] && map[out.node()]->node() == root )
  {
    return ev;
  }
  ev.valid = true;
  ev.level = lev[out.node()];
  return ev;
}

/* Candidate accepted by a pass: cone plus the literals it is bound to. */
struct replacement
{
  aig_network cone;
  std::vector<literal> leaves;
  int gain{ 0 };
  std::uint32_t level{ 0 };
};

/* Evaluates `cone` as a replacement of `root` bounded by `leaf_nodes`. */
inline std::optional<replacement> try_cone( mutable_aig& m, std::uint32_t root, std::span<std::uint32_t const> leaf_nodes,
                                            aig_network const& cone, std::vector<literal> leaf_lits )
{
  auto const freed = deref_cone( m, root, leaf_nodes );
  auto const ev = evaluate_cone( m, cone, leaf_lits, root );
  reref_cone( m, freed, leaf_nodes );
  if ( !ev.valid || ev.level > m.level( root ) )
  {
    return std::nullopt;
  }
  return replacement{ cone, std::move( leaf_lits ), static_cast<int>( freed.size() ) - static_cast<int>( ev.added ),
                      ev.level };
}

inline bool better( replacement const& a, std::optional<replacement> const& best )
{
  return !best || a.gain > best->gain || ( a.gain == best->gain && a.level < best->level );
}

inline void commit( mutable_aig& m, std::uint32_t root, replacement const& r )
{
  auto const lit = inline_cone( m, r.cone, r.leaves );
  if ( lit.node() != root )
  {
    m.replace( root, lit );
  }
  else
  {
    m.collect( lit.node() );
  }
}

/* Strash-clean result; a pass that edited nothing or would grow the network
   returns its input instead. */
inline aig_network finish_pass( aig_network const& input, mutable_aig const& m )
{
  if ( m.num_replacements() == 0 )
  {
    return input;
  }
  auto res = strash( m.compact() );
  if ( res.num_ands() > input.num_ands() )
  {
    return input;
  }
  return res;
}

} // namespace aigpart::detail
