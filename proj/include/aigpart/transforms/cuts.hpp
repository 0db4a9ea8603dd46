/*!
  \file cuts.hpp
  \brief Priority cut enumeration (k <= 4 leaves, bounded number of cuts per node).
*/

#pragma once

#include "../detail/mutable_aig.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace aigpart
{

struct cut
{
  std::array<std::uint32_t, 4> leaves{};
  std::uint8_t size{ 0 };

  auto begin() const { return leaves.begin(); }
  auto end() const { return leaves.begin() + size; }
  bool operator==( cut const& o ) const { return size == o.size && std::equal( begin(), end(), o.begin() ); }

  /* true when every leaf of this cut is a leaf of `o` */
  bool dominates( cut const& o ) const { return std::includes( o.begin(), o.end(), begin(), end() ); }
};

namespace detail
{

inline bool merge_cuts( cut const& a, cut const& b, cut& res, std::uint32_t k )
{
  std::uint32_t i = 0, j = 0, n = 0;
  while ( i < a.size || j < b.size )
  {
    std::uint32_t v;
    if ( j == b.size || ( i < a.size && a.leaves[i] < b.leaves[j] ) )
    {
      v = a.leaves[i++];
    }
    else if ( i == a.size || b.leaves[j] < a.leaves[i] )
    {
      v = b.leaves[j++];
    }
    else
    {
      v = a.leaves[i++];
      ++j;
    }
    if ( n == k )
    {
      return false;
    }
    res.leaves[n++] = v;
  }
  res.size = static_cast<std::uint8_t>( n );
  return true;
}

/* Lazily computed cut sets over a mutable network. The trivial cut is stored
   first; at most `max_cuts` non-trivial cuts follow, larger cuts first, ties by
   leaf ids. Entries may go stale as the network is edited; users re-derive the
   cut function and drop cuts whose cone is no longer bounded by the leaves. */
class cut_manager
{
public:
  cut_manager( mutable_aig const& m, std::uint32_t k = 4, std::uint32_t max_cuts = 8 )
      : m_( m ), k_( k ), max_cuts_( max_cuts )
  {
  }

  std::vector<cut> const& cuts( std::uint32_t root )
  {
    ensure( root );
    std::vector<std::uint32_t> stack{ root };
    while ( !stack.empty() )
    {
      auto const n = stack.back();
      ensure( n );
      if ( done_[n] )
      {
        stack.pop_back();
        continue;
      }
      if ( !m_.is_live_and( n ) )
      {
        sets_[n] = { trivial( n ) };
        done_[n] = true;
        stack.pop_back();
        continue;
      }
      auto const a = m_.fanin0( n ).node(), b = m_.fanin1( n ).node();
      ensure( std::max( a, b ) );
      if ( !done_[a] || !done_[b] )
      {
        if ( !done_[a] )
        {
          stack.push_back( a );
        }
        if ( !done_[b] )
        {
          stack.push_back( b );
        }
        continue;
      }
      compute( n, a, b );
      stack.pop_back();
    }
    return sets_[root];
  }

private:
  static cut trivial( std::uint32_t n )
  {
    cut c;
    c.leaves[0] = n;
    c.size = 1;
    return c;
  }

  void ensure( std::uint32_t n )
  {
    if ( n >= done_.size() )
    {
      done_.resize( std::max<std::size_t>( n + 1, m_.size() ), false );
      sets_.resize( done_.size() );
    }
  }

  void compute( std::uint32_t n, std::uint32_t a, std::uint32_t b )
  {
    std::vector<cut> cand;
    for ( auto const& ca : sets_[a] )
    {
      for ( auto const& cb : sets_[b] )
      {
        cut c;
        if ( merge_cuts( ca, cb, c, k_ ) && std::find( cand.begin(), cand.end(), c ) == cand.end() )
        {
          cand.push_back( c );
        }
      }
    }
    /* drop dominated cuts */
    std::vector<cut> kept;
    for ( std::size_t i = 0; i < cand.size(); ++i )
    {
      bool dominated = false;
      for ( std::size_t j = 0; j < cand.size() && !dominated; ++j )
      {
        dominated = j != i && cand[j].size < cand[i].size && cand[j].dominates( cand[i] );
      }
      if ( !dominated )
      {
        kept.push_back( cand[i] );
      }
    }
    std::sort( kept.begin(), kept.end(), []( cut const& x, cut const& y ) {
      if ( x.size != y.size )
      {
        return x.size > y.size;
      }
      return std::lexicographical_compare( x.begin(), x.end(), y.begin(), y.end() );
    } );
    if ( kept.size() > max_cuts_ )
    {
      kept.resize( max_cuts_ );
    }
    kept.insert( kept.begin(), trivial( n ) );
    sets_[n] = std::move( kept );
    done_[n] = true;
  }

  mutable_aig const& m_;
  std::uint32_t k_;
  std::uint32_t max_cuts_;
  std::vector<bool> done_;
  std::vector<std::vector<cut>> sets_;
};

} // namespace detail

} // namespace aigpart
