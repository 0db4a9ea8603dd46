/*!
  \file mutable_aig.hpp
  \brief In-place editable AIG used by the DAG-aware transforms.

  Nodes carry reference counts, fanout lists and a stored level. `replace`
  redirects all fanouts of a node to another literal, re-hashes the fanouts
  and merges any that become structurally equal or fold to constants. Ids are
  not topological after edits; `compact` rebuilds a dense network.
*/

#pragma once

#include "../aig.hpp"
#include "../strash.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aigpart::detail
{

class mutable_aig
{
public:
  explicit mutable_aig( aig_network const& net ) : source_( &net )
  {
    auto const n = net.size();
    nodes_.resize( n );
    fanouts_.resize( n );
    po_refs_.resize( n );
    num_cis_ = 1 + net.num_pis() + net.num_latches();
    net.foreach_and( [&]( auto id, auto const& g ) {
      auto& nd = nodes_[id];
      nd.f0 = g.fanin0;
      nd.f1 = g.fanin1;
      nd.is_and = true;
      nd.level = 1 + std::max( nodes_[g.fanin0.node()].level, nodes_[g.fanin1.node()].level );
      ++nodes_[g.fanin0.node()].refs;
      ++nodes_[g.fanin1.node()].refs;
      fanouts_[g.fanin0.node()].push_back( id );
      fanouts_[g.fanin1.node()].push_back( id );
      hash_.emplace( fanin_key( g.fanin0, g.fanin1 ), id );
    } );
    for ( auto const& po : net.pos() )
    {
      add_output( po.driver );
    }
    for ( auto const& l : net.latches() )
    {
      add_output( l.next );
    }
    num_ands_ = net.num_ands();
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>( nodes_.size() ); }
  std::uint32_t num_ands() const { return num_ands_; }
  bool is_and( std::uint32_t n ) const { return nodes_[n].is_and; }
  bool is_ci( std::uint32_t n ) const { return n != 0 && n < num_cis_; }
  bool is_dead( std::uint32_t n ) const { return nodes_[n].dead; }
  bool is_live_and( std::uint32_t n ) const { return nodes_[n].is_and && !nodes_[n].dead; }
  literal fanin0( std::uint32_t n ) const { return nodes_[n].f0; }
  literal fanin1( std::uint32_t n ) const { return nodes_[n].f1; }
  std::uint32_t refs( std::uint32_t n ) const { return nodes_[n].refs; }
  std::uint32_t level( std::uint32_t n ) const { return nodes_[n].level; }
  std::vector<std::uint32_t> const& fanouts( std::uint32_t n ) const { return fanouts_[n]; }
  std::vector<literal> const& outputs() const { return outputs_; }
  std::uint32_t num_replacements() const { return num_replacements_; }

  /* reference counts are exposed for MFFC walks; callers must restore them */
  std::uint32_t& ref_slot( std::uint32_t n ) { return nodes_[n].refs; }

  std::optional<literal> find_and( literal a, literal b ) const
  {
    if ( a.value > b.value )
    {
      std::swap( a, b );
    }
    if ( a == const0 || a == !b )
    {
      return const0;
    }
    if ( a == const1 || a == b )
    {
      return b;
    }
    if ( auto it = hash_.find( fanin_key( a, b ) ); it != hash_.end() )
    {
      return literal{ it->second, false };
    }
    return std::nullopt;
  }

  literal create_and( literal a, literal b )
  {
    if ( auto hit = find_and( a, b ) )
    {
      return *hit;
    }
    if ( a.value > b.value )
    {
      std::swap( a, b );
    }
    auto const id = size();
    node nd;
    nd.f0 = a;
    nd.f1 = b;
    nd.is_and = true;
    nd.level = 1 + std::max( nodes_[a.node()].level, nodes_[b.node()].level );
    nodes_.push_back( nd );
    fanouts_.emplace_back();
    po_refs_.emplace_back();
    ++nodes_[a.node()].refs;
    ++nodes_[b.node()].refs;
    fanouts_[a.node()].push_back( id );
    fanouts_[b.node()].push_back( id );
    hash_.emplace( fanin_key( a, b ), id );
    ++num_ands_;
    return literal{ id, false };
  }

  literal create_or( literal a, literal b ) { return !create_and( !a, !b ); }

  /*! \brief Removes `n` if nothing references it, recursively freeing its fanins. */
  void collect( std::uint32_t n )
  {
    if ( nodes_[n].is_and && !nodes_[n].dead && nodes_[n].refs == 0 )
    {
      remove_rec( n );
    }
  }

  /*! \brief Redirects every reference of node `old` to `repl`, cascading merges. */
  void replace( std::uint32_t old, literal repl )
  {
    ++num_replacements_;
    std::deque<std::pair<std::uint32_t, literal>> work;
    /* pin the replacement so cascading deletions cannot free it */
    ++nodes_[repl.node()].refs;
    work.emplace_back( old, repl );
    while ( !work.empty() )
    {
      auto [o, r_pinned] = work.front();
      work.pop_front();
      auto r = resolve( r_pinned );
      if ( r.node() != r_pinned.node() )
      {
        ++nodes_[r.node()].refs;
        unpin( r_pinned.node() );
      }
      if ( nodes_[o].dead || r.node() == o )
      {
        unpin( r.node() );
        continue;
      }
      auto const fos = std::move( fanouts_[o] );
      fanouts_[o].clear();
      for ( auto f : fos )
      {
        auto& nd = nodes_[f];
        if ( nd.dead )
        {
          continue;
        }
        erase_hash( f );
        if ( nd.f0.node() == o )
        {
          nd.f0 = r ^ nd.f0.complemented();
        }
        else
        {
          nd.f1 = r ^ nd.f1.complemented();
        }
        if ( nd.f0.value > nd.f1.value )
        {
          std::swap( nd.f0, nd.f1 );
        }
        --nodes_[o].refs;
        ++nodes_[r.node()].refs;
        fanouts_[r.node()].push_back( f );
        nd.level = 1 + std::max( nodes_[nd.f0.node()].level, nodes_[nd.f1.node()].level );
        std::optional<literal> merged;
        if ( nd.f0 == const0 || nd.f0 == !nd.f1 )
        {
          merged = const0;
        }
        else if ( nd.f0 == const1 || nd.f0 == nd.f1 )
        {
          merged = nd.f1;
        }
        else if ( auto it = hash_.find( fanin_key( nd.f0, nd.f1 ) ); it != hash_.end() )
        {
          merged = literal{ it->second, false };
        }
        else
        {
          hash_.emplace( fanin_key( nd.f0, nd.f1 ), f );
        }
        if ( merged )
        {
          ++nodes_[merged->node()].refs;
          work.emplace_back( f, *merged );
        }
      }
      for ( auto idx : po_refs_[o] )
      {
        outputs_[idx] = r ^ outputs_[idx].complemented();
        --nodes_[o].refs;
        ++nodes_[r.node()].refs;
        po_refs_[r.node()].push_back( idx );
      }
      po_refs_[o].clear();
      forward_.emplace( o, r );
      unpin( r.node() );
      collect( o );
    }
  }

  /*! \brief Dense, hashed copy with the interface of the source network. */
  aig_network compact() const
  {
    auto const& src = *source_;
    aig_network res;
    auto map = copy_interface( src, res );
    map.resize( size(), const0 );
    std::vector<bool> is_and_mask( size(), false );
    for ( std::uint32_t n = 0; n < size(); ++n )
    {
      is_and_mask[n] = is_live_and( n );
    }
    rebuild_dfs( res, map, size(), outputs_,
                 [&]( std::uint32_t n ) { return std::pair{ nodes_[n].f0, nodes_[n].f1 }; }, is_and_mask );
    for ( std::uint32_t o = 0; o < src.num_pos(); ++o )
    {
      res.create_po( map_literal( map, outputs_[o] ), src.po( o ).name );
    }
    for ( std::uint32_t k = 0; k < src.num_latches(); ++k )
    {
      res.set_latch_next( k, map_literal( map, outputs_[src.num_pos() + k] ) );
    }
    return res;
  }

private:
  struct node
  {
    literal f0, f1;
    std::uint32_t refs{ 0 };
    std::uint32_t level{ 0 };
    bool is_and{ false };
    bool dead{ false };
  };

  void add_output( literal l )
  {
    po_refs_[l.node()].push_back( static_cast<std::uint32_t>( outputs_.size() ) );
    outputs_.push_back( l );
    ++nodes_[l.node()].refs;
  }

  literal resolve( literal l ) const
  {
    while ( true )
    {
      auto it = forward_.find( l.node() );
      if ( it == forward_.end() )
      {
        return l;
      }
      l = it->second ^ l.complemented();
    }
  }

  void unpin( std::uint32_t n )
  {
    --nodes_[n].refs;
    collect( n );
  }

  void erase_hash( std::uint32_t n )
  {
    auto it = hash_.find( fanin_key( nodes_[n].f0, nodes_[n].f1 ) );
    if ( it != hash_.end() && it->second == n )
    {
      hash_.erase( it );
    }
  }

  void remove_rec( std::uint32_t root )
  {
    std::vector<std::uint32_t> stack{ root };
    while ( !stack.empty() )
    {
      auto const n = stack.back();
      stack.pop_back();
      auto& nd = nodes_[n];
      nd.dead = true;
      --num_ands_;
      erase_hash( n );
      for ( auto f : { nd.f0.node(), nd.f1.node() } )
      {
        auto& fo = fanouts_[f];
        if ( auto it = std::find( fo.begin(), fo.end(), n ); it != fo.end() )
        {
          fo.erase( it );
        }
        if ( --nodes_[f].refs == 0 && nodes_[f].is_and && !nodes_[f].dead )
        {
          stack.push_back( f );
        }
      }
      fanouts_[n].clear();
    }
  }

  aig_network const* source_;
  std::uint32_t num_cis_{ 1 };
  std::uint32_t num_ands_{ 0 };
  std::uint32_t num_replacements_{ 0 };
  std::vector<node> nodes_;
  std::vector<std::vector<std::uint32_t>> fanouts_;
  std::vector<std::vector<std::uint32_t>> po_refs_;
  std::vector<literal> outputs_;
  std::unordered_map<std::uint64_t, std::uint32_t> hash_;
  std::unordered_map<std::uint32_t, literal> forward_;
};

} // namespace aigpart::detail
