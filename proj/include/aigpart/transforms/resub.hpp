/*!
  \file resub.hpp
  \brief Window-based resubstitution with simulation-signature filtering.

  Every node gets a 1024-bit random-simulation signature. For a node n a
  reconvergence-driven cut bounds a window; divisors are window nodes outside
  MFFC(n). Candidates whose signatures match n (0-resub: a single divisor,
  1-resub: the AND or OR of two divisors) are validated exactly on the
  window's truth tables before substitution.
*/

#pragma once

#include "../aig.hpp"
#include "local.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace aigpart
{

struct resub_params
{
  std::uint32_t max_leaves{ 8 };
  std::uint32_t max_divisors{ 150 };
};

namespace detail
{

using signature = std::array<std::uint64_t, 16>;

class signature_table
{
public:
  explicit signature_table( mutable_aig const& m ) : m_( m )
  {
    std::mt19937_64 rng( 0x5eed );
    ensure( m.size() );
    done_[0] = true;
    for ( std::uint32_t n = 1; n < m.size() && m.is_ci( n ); ++n )
    {
      for ( auto& w : sigs_[n] )
      {
        w = rng();
      }
      done_[n] = true;
    }
  }

  signature const& get( std::uint32_t root )
  {
    ensure( m_.size() );
    std::vector<std::uint32_t> stack{ root };
    while ( !stack.empty() )
    {
      auto const n = stack.back();
      if ( done_[n] )
      {
        stack.pop_back();
        continue;
      }
      auto const a = m_.fanin0( n ), b = m_.fanin1( n );
      if ( !done_[a.node()] || !done_[b.node()] )
      {
        if ( !done_[a.node()] )
        {
          stack.push_back( a.node() );
        }
        if ( !done_[b.node()] )
        {
          stack.push_back( b.node() );
        }
        continue;
      }
      auto const ma = a.complemented() ? ~std::uint64_t{ 0 } : 0u;
      auto const mb = b.complemented() ? ~std::uint64_t{ 0 } : 0u;
      for ( std::size_t w = 0; w < 16; ++w )
      {
        sigs_[n][w] = ( sigs_[a.node()][w] ^ ma ) & ( sigs_[b.node()][w] ^ mb );
      }
      done_[n] = true;
      stack.pop_back();
    }
    return sigs_[root];
  }

private:
  void ensure( std::size_t n )
  {
    if ( done_.size() < n )
    {
      done_.resize( n, false );
      sigs_.resize( n );
    }
  }

  mutable_aig const& m_;
  std::vector<bool> done_;
  std::vector<signature> sigs_;
};

/* literal-level signature test: does (x ^ cx) imply (y ^ cy) on all patterns */
inline bool sig_implies( signature const& x, bool cx, signature const& y, bool cy )
{
  auto const mx = cx ? ~std::uint64_t{ 0 } : 0u, my = cy ? ~std::uint64_t{ 0 } : 0u;
  for ( std::size_t w = 0; w < 16; ++w )
  {
    if ( ( x[w] ^ mx ) & ~( y[w] ^ my ) )
    {
      return false;
    }
  }
  return true;
}

/* Reconvergence-driven cut: grows the leaf set from the fanins of `root`,
   always expanding the leaf that adds the fewest new leaves. */
inline std::vector<std::uint32_t> reconvergence_cut( mutable_aig const& m, std::uint32_t root, std::uint32_t max_leaves,
                                                     std::vector<std::uint32_t>& internal )
{
  std::unordered_set<std::uint32_t> visited{ root };
  std::vector<std::uint32_t> leaves;
  internal.assign( 1, root );
  for ( auto f : { m.fanin0( root ).node(), m.fanin1( root ).node() } )
  {
    if ( visited.insert( f ).second )
    {
      leaves.push_back( f );
    }
  }
  while ( true )
  {
    int best_cost = 3;
    std::size_t best = leaves.size();
    for ( std::size_t i = 0; i < leaves.size(); ++i )
    {
      auto const l = leaves[i];
      if ( !m.is_live_and( l ) )
      {
        continue;
      }
      int cost = -1;
      for ( auto f : { m.fanin0( l ).node(), m.fanin1( l ).node() } )
      {
        cost += visited.count( f ) ? 0 : 1;
      }
      if ( leaves.size() + cost > max_leaves )
      {
        continue;
      }
      if ( cost < best_cost || ( cost == best_cost && l > leaves[best] ) )
      {
        best_cost = cost;
        best = i;
      }
    }
    if ( best == leaves.size() )
    {
      break;
    }
    auto const l = leaves[best];
    leaves.erase( leaves.begin() + static_cast<std::ptrdiff_t>( best ) );
    internal.push_back( l );
    for ( auto f : { m.fanin0( l ).node(), m.fanin1( l ).node() } )
    {
      if ( visited.insert( f ).second )
      {
        leaves.push_back( f );
      }
    }
  }
  std::sort( leaves.begin(), leaves.end() );
  return leaves;
}

/* pairwise AND cone over two literal PIs */
inline aig_network pair_cone( bool c0, bool c1, bool out_c )
{
  aig_network cone;
  auto const a = cone.create_pi(), b = cone.create_pi();
  cone.create_po( cone.create_and( a ^ c0, b ^ c1 ) ^ out_c );
  return cone;
}

inline aig_network buffer_cone( bool out_c )
{
  aig_network cone;
  cone.create_po( cone.create_pi() ^ out_c );
  return cone;
}

} // namespace detail

/*! \brief One resubstitution pass; never increases the AND count. */
inline aig_network resub( aig_network const& net, resub_params const& ps = {} )
{
  if ( net.num_ands() == 0 )
  {
    return net;
  }
  detail::mutable_aig m( net );
  detail::signature_table sigs( m );
  auto const last = net.size();
  for ( auto n = net.first_and(); n < last; ++n )
  {
    if ( !m.is_live_and( n ) )
    {
      continue;
    }
    std::vector<std::uint32_t> internal;
    auto const leaves = detail::reconvergence_cut( m, n, ps.max_leaves, internal );
    auto const k = static_cast<std::uint32_t>( leaves.size() );

    auto const freed = detail::deref_cone( m, n, leaves );
    detail::reref_cone( m, freed, leaves );
    std::unordered_set<std::uint32_t> excluded( freed.begin(), freed.end() );

    /* divisors: leaves, internal window nodes outside the MFFC, then side nodes
       whose fanins both lie in the window */
    std::unordered_set<std::uint32_t> window( leaves.begin(), leaves.end() );
    window.insert( internal.begin(), internal.end() );
    std::vector<std::uint32_t> divisors( leaves.begin(), leaves.end() );
    for ( auto x : internal )
    {
      if ( !excluded.count( x ) )
      {
        divisors.push_back( x );
      }
    }
    for ( std::size_t i = 0; i < divisors.size() && divisors.size() < ps.max_divisors; ++i )
    {
      for ( auto f : m.fanouts( divisors[i] ) )
      {
        if ( divisors.size() >= ps.max_divisors )
        {
          break;
        }
        if ( window.count( f ) || !m.is_live_and( f ) || m.fanin0( f ).node() == n || m.fanin1( f ).node() == n )
        {
          continue;
        }
        if ( window.count( m.fanin0( f ).node() ) && window.count( m.fanin1( f ).node() ) )
        {
          window.insert( f );
          divisors.push_back( f );
        }
      }
    }

    auto const& target_sig = sigs.get( n );
    std::optional<truth_table> target;
    auto exact = [&]( std::uint32_t d ) { return detail::cone_function( m, d, leaves, k ); };
    std::unordered_map<std::uint32_t, truth_table> tts;
    auto tt_of = [&]( std::uint32_t d ) -> truth_table const* {
      if ( auto it = tts.find( d ); it != tts.end() )
      {
        return &it->second;
      }
      auto t = exact( d );
      if ( !t )
      {
        return nullptr;
      }
      return &tts.emplace( d, std::move( *t ) ).first->second;
    };
    target = exact( n );
    if ( !target )
    {
      continue;
    }

    std::optional<detail::replacement> best;
    auto consider = [&]( aig_network cone, std::vector<literal> lits ) {
      auto cand = detail::try_cone( m, n, leaves, cone, std::move( lits ) );
      if ( cand && cand->gain > 0 && detail::better( *cand, best ) )
      {
        best = std::move( cand );
      }
    };

    /* 0-resub */
    for ( auto d : divisors )
    {
      auto const& s = sigs.get( d );
      for ( bool c : { false, true } )
      {
        if ( detail::sig_implies( s, c, target_sig, false ) && detail::sig_implies( target_sig, false, s, c ) )
        {
          auto const* t = tt_of( d );
          if ( t && ( c ? ~*t : *t ) == *target )
          {
            consider( detail::buffer_cone( c ), { literal{ d, false } } );
          }
        }
      }
    }

    /* 1-resub: n = a & b or n = !( a & b ) over divisor literals */
    if ( !best && freed.size() >= 2 )
    {
      for ( bool out_c : { false, true } )
      {
        auto const goal = out_c ? ~*target : *target;
        std::vector<literal> unate;
        for ( auto d : divisors )
        {
          auto const& s = sigs.get( d );
          for ( bool c : { false, true } )
          {
            if ( detail::sig_implies( target_sig, out_c, s, c ) )
            {
              auto const* t = tt_of( d );
              if ( t && ( goal & ~( c ? ~*t : *t ) ).is_const0() )
              {
                unate.emplace_back( d, c );
              }
            }
          }
        }
        for ( std::size_t i = 0; i < unate.size() && !best; ++i )
        {
          for ( std::size_t j = i + 1; j < unate.size() && !best; ++j )
          {
            auto const a = unate[i], b = unate[j];
            if ( a.node() == b.node() )
            {
              continue;
            }
            auto const& ta = *tt_of( a.node() );
            auto const& tb = *tt_of( b.node() );
            if ( ( ( a.complemented() ? ~ta : ta ) & ( b.complemented() ? ~tb : tb ) ) == goal )
            {
              consider( detail::pair_cone( a.complemented(), b.complemented(), out_c ),
                        { a.regular(), b.regular() } );
            }
          }
        }
      }
    }
    if ( best )
    {
      detail::commit( m, n, *best );
    }
  }
  return detail::finish_pass( net, m );
}

} // namespace aigpart
