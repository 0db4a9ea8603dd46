/*!
  \file resynth.hpp
  \brief Truth-table resynthesis: ISOP computation, literal factoring and cone construction.

  `resynth_tt` is the shared kernel of rewriting and refactoring. For a
  function it tries the factored ISOP of f and of !f and a top-level XOR
  decomposition; for functions of at most four variables it also tries
  Shannon decomposition, memoized per thread. The smallest cone wins, ties
  going to the earlier candidate in that order.
*/

#pragma once

#include "aig.hpp"
#include "truth_table.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace aigpart
{

/*! \brief Product term: variable i appears iff bit i of `mask`, positively iff bit i of `polarity`. */
struct cube
{
  std::uint32_t mask{ 0 };
  std::uint32_t polarity{ 0 };

  bool operator==( cube const& ) const = default;
};

namespace detail
{

inline truth_table isop_rec( truth_table const& lower, truth_table const& upper, int var, std::vector<cube>& cubes )
{
  if ( lower.is_const0() )
  {
    return truth_table::constant( lower.num_vars(), false );
  }
  if ( upper.is_const1() )
  {
    cubes.push_back( {} );
    return truth_table::constant( lower.num_vars(), true );
  }
  int v = var;
  while ( v >= 0 && !lower.depends_on( static_cast<std::uint32_t>( v ) ) &&
          !upper.depends_on( static_cast<std::uint32_t>( v ) ) )
  {
    --v;
  }
  auto const uv = static_cast<std::uint32_t>( v );
  auto const l0 = lower.cofactor0( uv ), l1 = lower.cofactor1( uv );
  auto const u0 = upper.cofactor0( uv ), u1 = upper.cofactor1( uv );

  auto const begin0 = cubes.size();
  auto const r0 = isop_rec( l0 & ~u1, u0, v - 1, cubes );
  for ( auto i = begin0; i < cubes.size(); ++i )
  {
    cubes[i].mask |= 1u << uv;
  }
  auto const begin1 = cubes.size();
  auto const r1 = isop_rec( l1 & ~u0, u1, v - 1, cubes );
  for ( auto i = begin1; i < cubes.size(); ++i )
  {
    cubes[i].mask |= 1u << uv;
    cubes[i].polarity |= 1u << uv;
  }
  auto const r2 = isop_rec( ( l0 & ~r0 ) | ( l1 & ~r1 ), u0 & u1, v - 1, cubes );
  auto const x = truth_table::nth_var( lower.num_vars(), uv );
  return ( r0 & ~x ) | ( r1 & x ) | r2;
}

} // namespace detail

/*! \brief Irredundant sum-of-products of `tt` (Minato-Morreale recursion). */
inline std::vector<cube> isop( truth_table const& tt )
{
  std::vector<cube> cubes;
  detail::isop_rec( tt, tt, static_cast<int>( tt.num_vars() ) - 1, cubes );
  return cubes;
}

/*! \brief Evaluates a cube list as a truth table over `num_vars` variables. */
inline truth_table cover_function( std::vector<cube> const& cubes, std::uint32_t num_vars )
{
  auto res = truth_table::constant( num_vars, false );
  for ( auto const& c : cubes )
  {
    auto term = truth_table::constant( num_vars, true );
    for ( std::uint32_t v = 0; v < num_vars; ++v )
    {
      if ( c.mask >> v & 1u )
      {
        auto const x = truth_table::nth_var( num_vars, v );
        term &= ( c.polarity >> v & 1u ) ? x : ~x;
      }
    }
    res |= term;
  }
  return res;
}

/*! \brief Copies a single-output cone into `dst`, binding its PIs to `leaves`. */
template<class Ntk>
literal inline_cone( Ntk& dst, aig_network const& cone, std::span<literal const> leaves )
{
  std::vector<literal> map( cone.size(), const0 );
  for ( std::uint32_t i = 0; i < cone.num_pis(); ++i )
  {
    map[cone.pi_node( i )] = i < leaves.size() ? leaves[i] : const0;
  }
  cone.foreach_and( [&]( auto id, auto const& g ) {
    map[id] = dst.create_and( map[g.fanin0.node()] ^ g.fanin0.complemented(),
                              map[g.fanin1.node()] ^ g.fanin1.complemented() );
  } );
  auto const out = cone.po( 0 ).driver;
  return map[out.node()] ^ out.complemented();
}

namespace detail
{

template<class Ntk>
literal balanced_and( Ntk& net, std::vector<literal> ops )
{
  if ( ops.empty() )
  {
    return const1;
  }
  while ( ops.size() > 1 )
  {
    std::vector<literal> next;
    for ( std::size_t i = 0; i + 1 < ops.size(); i += 2 )
    {
      next.push_back( net.create_and( ops[i], ops[i + 1] ) );
    }
    if ( ops.size() % 2 )
    {
      next.push_back( ops.back() );
    }
    ops = std::move( next );
  }
  return ops[0];
}

template<class Ntk>
literal balanced_or( Ntk& net, std::vector<literal> ops )
{
  for ( auto& o : ops )
  {
    o = !o;
  }
  return ops.empty() ? const0 : !balanced_and( net, std::move( ops ) );
}

/* Literal factoring: repeatedly pull out the literal shared by most cubes. */
template<class Ntk>
literal build_factored( Ntk& net, std::vector<cube> const& cubes, std::span<literal const> leaves )
{
  if ( cubes.empty() )
  {
    return const0;
  }
  for ( auto const& c : cubes )
  {
    if ( c.mask == 0 )
    {
      return const1;
    }
  }
  auto const k = static_cast<std::uint32_t>( leaves.size() );
  auto product = [&]( cube const& c ) {
    std::vector<literal> ops;
    for ( std::uint32_t v = 0; v < k; ++v )
    {
      if ( c.mask >> v & 1u )
      {
        ops.push_back( leaves[v] ^ !( c.polarity >> v & 1u ) );
      }
    }
    return balanced_and( net, std::move( ops ) );
  };
  if ( cubes.size() == 1 )
  {
    return product( cubes[0] );
  }
  std::uint32_t best_count = 1, best_var = 0;
  bool best_pos = false;
  for ( std::uint32_t v = 0; v < k; ++v )
  {
    for ( bool pos : { true, false } )
    {
      std::uint32_t count = 0;
      for ( auto const& c : cubes )
      {
        if ( ( c.mask >> v & 1u ) && ( ( c.polarity >> v & 1u ) != 0 ) == pos )
        {
          ++count;
        }
      }
      if ( count > best_count )
      {
        best_count = count;
        best_var = v;
        best_pos = pos;
      }
    }
  }
  if ( best_count < 2 )
  {
    std::vector<literal> terms;
    for ( auto const& c : cubes )
    {
      terms.push_back( product( c ) );
    }
    return balanced_or( net, std::move( terms ) );
  }
  std::vector<cube> quotient, remainder;
  for ( auto c : cubes )
  {
    if ( ( c.mask >> best_var & 1u ) && ( ( c.polarity >> best_var & 1u ) != 0 ) == best_pos )
    {
      c.mask &= ~( 1u << best_var );
      c.polarity &= ~( 1u << best_var );
      quotient.push_back( c );
    }
    else
    {
      remainder.push_back( c );
    }
  }
  auto const lit = leaves[best_var] ^ !best_pos;
  auto const term = net.create_and( lit, build_factored( net, quotient, leaves ) );
  if ( remainder.empty() )
  {
    return term;
  }
  return net.create_or( term, build_factored( net, remainder, leaves ) );
}

inline aig_network scratch_cone( std::uint32_t num_vars, std::vector<literal>& pis )
{
  aig_network net;
  pis.clear();
  for ( std::uint32_t i = 0; i < num_vars; ++i )
  {
    pis.push_back( net.create_pi() );
  }
  return net;
}

inline aig_network best_cone( truth_table const& tt );

inline aig_network best_cone_uncached( truth_table const& tt )
{
  auto const k = tt.num_vars();
  std::vector<literal> pis;

  auto trivial = scratch_cone( k, pis );
  if ( tt.is_const0() || tt.is_const1() )
  {
    trivial.create_po( tt.is_const1() ? const1 : const0 );
    return trivial;
  }
  for ( std::uint32_t v = 0; v < k; ++v )
  {
    auto const x = truth_table::nth_var( k, v );
    if ( tt == x || tt == ~x )
    {
      trivial.create_po( pis[v] ^ ( tt != x ) );
      return trivial;
    }
  }

  auto best = scratch_cone( k, pis );
  best.create_po( build_factored( best, isop( tt ), pis ) );

  auto consider = [&]( aig_network&& cand ) {
    if ( cand.num_ands() < best.num_ands() )
    {
      best = std::move( cand );
    }
  };

  {
    auto cand = scratch_cone( k, pis );
    cand.create_po( !build_factored( cand, isop( ~tt ), pis ) );
    consider( std::move( cand ) );
  }

  for ( std::uint32_t v = 0; v < k; ++v )
  {
    auto const f0 = tt.cofactor0( v );
    if ( tt.cofactor1( v ) == ~f0 )
    {
      auto cand = scratch_cone( k, pis );
      auto const g = inline_cone( cand, best_cone( f0 ), pis );
      cand.create_po( cand.create_xor( pis[v], g ) );
      consider( std::move( cand ) );
      break;
    }
  }

  if ( k <= 4 )
  {
    for ( std::uint32_t v = 0; v < k; ++v )
    {
      auto const f0 = tt.cofactor0( v ), f1 = tt.cofactor1( v );
      if ( f0 == f1 )
      {
        continue;
      }
      auto cand = scratch_cone( k, pis );
      auto const t = inline_cone( cand, best_cone( f1 ), pis );
      auto const e = inline_cone( cand, best_cone( f0 ), pis );
      cand.create_po( cand.create_mux( pis[v], t, e ) );
      consider( std::move( cand ) );
    }
  }
  return best;
}

inline aig_network best_cone( truth_table const& tt )
{
  if ( tt.num_vars() > 4 )
  {
    return best_cone_uncached( tt );
  }
  thread_local std::unordered_map<std::uint32_t, aig_network> cache;
  auto const key = ( tt.num_vars() << 16 ) | static_cast<std::uint32_t>( tt.words()[0] );
  if ( auto it = cache.find( key ); it != cache.end() )
  {
    return it->second;
  }
  auto cone = best_cone_uncached( tt );
  cache.emplace( key, cone );
  return cone;
}

} // namespace detail

/*! \brief Resynthesizes `tt` as a cone with one PI per variable and a single PO. Deterministic. */
inline aig_network resynth_tt( truth_table const& tt )
{
  return detail::best_cone( tt );
}

/*! \brief Builds a cone for `tt` directly into `net` over the given leaf literals. */
template<class Ntk>
literal resynth_tt( Ntk& net, truth_table const& tt, std::span<literal const> leaves )
{
  return inline_cone( net, detail::best_cone( tt ), leaves );
}

} // namespace aigpart
