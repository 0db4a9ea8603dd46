/*!
  \file graph.hpp
  \brief Weighted undirected graph and a multilevel k-way partitioner.

  k-way partitions come from recursive bisection. Each bisection coarsens by
  heavy-edge matching down to at most 200 vertices, bisects the coarsest graph
  by greedy growing, and refines every level on the way back with
  Fiduccia-Mattheyses passes. A final greedy pass repairs any part that still
  exceeds the cap.
*/

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <utility>
#include <vector>

namespace aigpart
{

/*! \brief CSR adjacency; parallel edges are merged by summing weights. */
class weighted_graph
{
public:
  struct edge
  {
    std::uint32_t u, v;
    std::uint64_t weight;
  };

  weighted_graph() = default;

  weighted_graph( std::vector<std::uint64_t> vertex_weights, std::vector<edge> const& edges )
      : vweight_( std::move( vertex_weights ) )
  {
    auto const n = num_vertices();
    std::vector<edge> es;
    es.reserve( 2 * edges.size() );
    for ( auto const& e : edges )
    {
      if ( e.u != e.v && e.weight > 0 )
      {
        es.push_back( { e.u, e.v, e.weight } );
        es.push_back( { e.v, e.u, e.weight } );
      }
    }
    std::sort( es.begin(), es.end(), []( auto const& a, auto const& b ) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    } );
    offset_.assign( n + 1, 0 );
    for ( std::size_t i = 0; i < es.size(); )
    {
      auto j = i;
      std::uint64_t w = 0;
      while ( j < es.size() && es[j].u == es[i].u && es[j].v == es[i].v )
      {
        w += es[j++].weight;
      }
      adj_.push_back( es[i].v );
      aweight_.push_back( w );
      ++offset_[es[i].u + 1];
      i = j;
    }
    for ( std::uint32_t v = 0; v < n; ++v )
    {
      offset_[v + 1] += offset_[v];
    }
  }

  std::uint32_t num_vertices() const { return static_cast<std::uint32_t>( vweight_.size() ); }
  std::uint64_t vertex_weight( std::uint32_t v ) const { return vweight_[v]; }
  std::uint64_t total_weight() const { return std::accumulate( vweight_.begin(), vweight_.end(), std::uint64_t{ 0 } ); }

  template<class Fn>
  void foreach_neighbor( std::uint32_t v, Fn&& fn ) const
  {
    for ( auto i = offset_[v]; i < offset_[v + 1]; ++i )
    {
      fn( adj_[i], aweight_[i] );
    }
  }

  /*! \brief Sum of edge weights between different parts. */
  std::uint64_t cut( std::vector<std::uint32_t> const& part ) const
  {
    std::uint64_t c = 0;
    for ( std::uint32_t v = 0; v < num_vertices(); ++v )
    {
      foreach_neighbor( v, [&]( auto u, auto w ) {
        if ( u > v && part[u] != part[v] )
        {
          c += w;
        }
      } );
    }
    return c;
  }

  std::vector<std::uint64_t> part_weights( std::vector<std::uint32_t> const& part, std::uint32_t k ) const
  {
    std::vector<std::uint64_t> pw( k, 0 );
    for ( std::uint32_t v = 0; v < num_vertices(); ++v )
    {
      pw[part[v]] += vweight_[v];
    }
    return pw;
  }

  /*! \brief Subgraph induced by `vertices` (renumbered in the given order). */
  weighted_graph induced( std::vector<std::uint32_t> const& vertices ) const
  {
    std::vector<std::uint32_t> local( num_vertices(), std::numeric_limits<std::uint32_t>::max() );
    std::vector<std::uint64_t> w;
    for ( std::uint32_t i = 0; i < vertices.size(); ++i )
    {
      local[vertices[i]] = i;
      w.push_back( vweight_[vertices[i]] );
    }
    std::vector<edge> es;
    for ( auto v : vertices )
    {
      foreach_neighbor( v, [&]( auto u, auto wt ) {
        if ( u > v && local[u] != std::numeric_limits<std::uint32_t>::max() )
        {
          es.push_back( { local[v], local[u], wt } );
        }
      } );
    }
    return weighted_graph( std::move( w ), es );
  }

private:
  std::vector<std::uint64_t> vweight_;
  std::vector<std::uint32_t> offset_{ 0 };
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint64_t> aweight_;
};

namespace detail
{

inline constexpr std::uint32_t coarsest_size = 200;
inline constexpr std::uint32_t fm_max_passes = 10;

/* portable Fisher-Yates; std::shuffle is implementation-defined */
template<class T>
void shuffle( std::vector<T>& v, std::mt19937_64& rng )
{
  for ( auto i = v.size(); i > 1; --i )
  {
    std::swap( v[i - 1], v[rng() % i] );
  }
}

struct coarse_level
{
  weighted_graph graph;
  std::vector<std::uint32_t> map; /* fine vertex -> coarse vertex */
};

/* One level of heavy-edge matching; merged vertices stay below `max_vertex_weight`. */
inline coarse_level coarsen( weighted_graph const& g, std::uint64_t max_vertex_weight, std::mt19937_64& rng )
{
  auto const n = g.num_vertices();
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> order( n );
  std::iota( order.begin(), order.end(), 0u );
  shuffle( order, rng );
  std::vector<std::uint32_t> mate( n, none );
  for ( auto v : order )
  {
    if ( mate[v] != none )
    {
      continue;
    }
    std::uint32_t best = none;
    std::uint64_t best_w = 0;
    g.foreach_neighbor( v, [&]( auto u, auto w ) {
      if ( mate[u] == none && u != v && g.vertex_weight( u ) + g.vertex_weight( v ) <= max_vertex_weight &&
           ( w > best_w || ( w == best_w && u < best ) ) )
      {
        best = u;
        best_w = w;
      }
    } );
    mate[v] = best == none ? v : best;
    if ( best != none )
    {
      mate[best] = v;
    }
  }
  coarse_level lvl;
  lvl.map.assign( n, none );
  std::vector<std::uint64_t> cw;
  for ( std::uint32_t v = 0; v < n; ++v )
  {
    if ( lvl.map[v] == none )
    {
      auto const c = static_cast<std::uint32_t>( cw.size() );
      lvl.map[v] = c;
      lvl.map[mate[v]] = c;
      cw.push_back( g.vertex_weight( v ) + ( mate[v] != v ? g.vertex_weight( mate[v] ) : 0 ) );
    }
  }
  std::vector<weighted_graph::edge> es;
  for ( std::uint32_t v = 0; v < n; ++v )
  {
    g.foreach_neighbor( v, [&]( auto u, auto w ) {
      if ( u > v && lvl.map[u] != lvl.map[v] )
      {
        es.push_back( { lvl.map[v], lvl.map[u], w } );
      }
    } );
  }
  lvl.graph = weighted_graph( std::move( cw ), es );
  return lvl;
}

/* Two-way FM over a bisection with per-side weight bounds. Gains live in
   buckets indexed by gain + offset with lazy deletion. Returns the cut. */
class fm_refiner
{
public:
  fm_refiner( weighted_graph const& g, std::vector<std::uint32_t>& side, std::array<std::uint64_t, 2> bound )
      : g_( g ), side_( side ), bound_( bound )
  {
    for ( std::uint32_t v = 0; v < g.num_vertices(); ++v )
    {
      weight_[side_[v]] += g.vertex_weight( v );
    }
  }

  std::uint64_t run()
  {
    auto cut = g_.cut( side_ );
    for ( std::uint32_t pass = 0; pass < fm_max_passes; ++pass )
    {
      auto const before = cut;
      auto const excess_before = excess();
      cut = one_pass( cut );
      if ( cut >= before && excess() >= excess_before )
      {
        break;
      }
    }
    return cut;
  }

private:
  std::int64_t gain_of( std::uint32_t v ) const
  {
    std::int64_t gn = 0;
    g_.foreach_neighbor( v, [&]( auto u, auto w ) {
      gn += side_[u] == side_[v] ? -static_cast<std::int64_t>( w ) : static_cast<std::int64_t>( w );
    } );
    return gn;
  }

  std::uint64_t excess() const
  {
    std::uint64_t e = 0;
    for ( int s = 0; s < 2; ++s )
    {
      e += weight_[s] > bound_[s] ? weight_[s] - bound_[s] : 0;
    }
    return e;
  }

  std::uint64_t one_pass( std::uint64_t cut )
  {
    auto const n = g_.num_vertices();
    weight_ = { 0, 0 };
    std::int64_t max_deg = 0;
    for ( std::uint32_t v = 0; v < n; ++v )
    {
      weight_[side_[v]] += g_.vertex_weight( v );
      std::int64_t d = 0;
      g_.foreach_neighbor( v, [&]( auto, auto w ) { d += static_cast<std::int64_t>( w ); } );
      max_deg = std::max( max_deg, d );
    }
    /* buckets get unwieldy for huge weighted degrees; clamp the index range */
    auto const span = static_cast<std::size_t>( std::min<std::int64_t>( max_deg, 1 << 20 ) );
    auto const offset = static_cast<std::int64_t>( span );
    std::array<std::vector<std::vector<std::uint32_t>>, 2> buckets;
    for ( auto& b : buckets )
    {
      b.assign( 2 * span + 1, {} );
    }
    std::array<std::int64_t, 2> top{ -1, -1 };
    gain_.assign( n, 0 );
    locked_.assign( n, false );
    auto index_of = [&]( std::int64_t gn ) {
      return static_cast<std::size_t>( std::clamp<std::int64_t>( gn, -offset, offset ) + offset );
    };
    auto push = [&]( std::uint32_t v ) {
      auto const idx = index_of( gain_[v] );
      buckets[side_[v]][idx].push_back( v );
      top[side_[v]] = std::max( top[side_[v]], static_cast<std::int64_t>( idx ) );
    };
    for ( std::uint32_t v = 0; v < n; ++v )
    {
      gain_[v] = gain_of( v );
      push( v );
    }
    auto pop_top = [&]( int s ) -> std::int64_t {
      while ( top[s] >= 0 )
      {
        auto& b = buckets[s][static_cast<std::size_t>( top[s] )];
        while ( !b.empty() )
        {
          auto const v = b.back();
          if ( locked_[v] || side_[v] != static_cast<std::uint32_t>( s ) ||
               index_of( gain_[v] ) != static_cast<std::size_t>( top[s] ) )
          {
            b.pop_back();
            continue;
          }
          return v;
        }
        --top[s];
      }
      return -1;
    };

    std::vector<std::uint32_t> moves;
    auto best_cut = cut;
    auto best_excess = excess();
    std::size_t best_prefix = 0;
    auto current = static_cast<std::int64_t>( cut );
    while ( true )
    {
      std::array<std::int64_t, 2> cand{ pop_top( 0 ), pop_top( 1 ) };
      int chosen = -1;
      std::int64_t chosen_gain = std::numeric_limits<std::int64_t>::min();
      for ( int s = 0; s < 2; ++s )
      {
        if ( cand[s] < 0 )
        {
          continue;
        }
        auto const v = static_cast<std::uint32_t>( cand[s] );
        auto const w = g_.vertex_weight( v );
        auto const other = 1 - s;
        /* a move must fit the target side, unless it reduces an overload */
        bool const fits = weight_[other] + w <= bound_[other];
        bool const relieves = weight_[s] > bound_[s] && weight_[other] + w < weight_[s];
        if ( !fits && !relieves )
        {
          continue;
        }
        auto gn = gain_[v];
        if ( weight_[s] > bound_[s] )
        {
          gn += std::int64_t{ 1 } << 40; /* overloaded side moves first */
        }
        if ( gn > chosen_gain || ( gn == chosen_gain && weight_[s] > weight_[other] ) )
        {
          chosen = s;
          chosen_gain = gn;
        }
      }
      if ( chosen < 0 )
      {
        break;
      }
      auto const v = static_cast<std::uint32_t>( cand[chosen] );
      current -= gain_[v];
      move( v );
      moves.push_back( v );
      g_.foreach_neighbor( v, [&]( auto u, auto ) {
        if ( !locked_[u] )
        {
          gain_[u] = gain_of( u );
          push( u );
        }
      } );
      auto const ex = excess();
      auto const c = static_cast<std::uint64_t>( current );
      if ( ex < best_excess || ( ex == best_excess && c < best_cut ) )
      {
        best_excess = ex;
        best_cut = c;
        best_prefix = moves.size();
      }
    }
    /* roll back to the best prefix */
    for ( auto i = moves.size(); i > best_prefix; --i )
    {
      move( moves[i - 1] );
    }
    return best_cut;
  }

  void move( std::uint32_t v )
  {
    auto const w = g_.vertex_weight( v );
    weight_[side_[v]] -= w;
    side_[v] ^= 1u;
    weight_[side_[v]] += w;
    locked_[v] = true;
  }

  weighted_graph const& g_;
  std::vector<std::uint32_t>& side_;
  std::array<std::uint64_t, 2> bound_;
  std::array<std::uint64_t, 2> weight_{ 0, 0 };
  std::vector<std::int64_t> gain_;
  std::vector<bool> locked_;
};

/* Greedy graph growing from a start vertex until side 0 reaches `target0`. */
inline std::vector<std::uint32_t> grow_bisection( weighted_graph const& g, std::uint32_t start, std::uint64_t target0 )
{
  auto const n = g.num_vertices();
  std::vector<std::uint32_t> side( n, 1u );
  std::vector<std::int64_t> conn( n, 0 ); /* edge weight into side 0 minus into side 1 */
  for ( std::uint32_t v = 0; v < n; ++v )
  {
    g.foreach_neighbor( v, [&]( auto, auto w ) { conn[v] -= static_cast<std::int64_t>( w ); } );
  }
  /* max-heap on connectivity, ties to the lowest id; stale entries are skipped */
  using item = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<item> frontier;
  std::uint32_t next_free = 0;
  std::uint64_t w0 = 0;
  auto next = start;
  while ( w0 < target0 )
  {
    side[next] = 0;
    w0 += g.vertex_weight( next );
    g.foreach_neighbor( next, [&]( auto u, auto w ) {
      conn[u] += 2 * static_cast<std::int64_t>( w );
      if ( side[u] == 1 )
      {
        frontier.emplace( conn[u], -static_cast<std::int64_t>( u ) );
      }
    } );
    std::uint32_t best = n;
    while ( !frontier.empty() )
    {
      auto [c, neg] = frontier.top();
      auto const v = static_cast<std::uint32_t>( -neg );
      if ( side[v] == 1 && c == conn[v] )
      {
        best = v;
        break;
      }
      frontier.pop();
    }
    if ( best == n )
    {
      /* disconnected remainder: restart at the lowest free id */
      while ( next_free < n && side[next_free] == 0 )
      {
        ++next_free;
      }
      if ( next_free == n )
      {
        break;
      }
      best = next_free;
    }
    next = best;
  }
  return side;
}

inline std::uint64_t bound_excess( std::vector<std::uint64_t> const& w, std::array<std::uint64_t, 2> bound )
{
  std::uint64_t e = 0;
  for ( int s = 0; s < 2; ++s )
  {
    e += w[s] > bound[s] ? w[s] - bound[s] : 0;
  }
  return e;
}

/*! \brief Multilevel bisection; side 0 aims at `target0` and both sides honor `bound`. */
inline std::vector<std::uint32_t> bisect( weighted_graph const& g, std::uint64_t target0, std::array<std::uint64_t, 2> bound,
                                          std::mt19937_64& rng )
{
  auto const n = g.num_vertices();
  if ( n == 0 )
  {
    return {};
  }
  std::vector<coarse_level> levels;
  auto const max_vw = std::max<std::uint64_t>( 1, std::min( bound[0], bound[1] ) / 4 );
  weighted_graph const* cur = &g;
  while ( cur->num_vertices() > coarsest_size )
  {
    auto lvl = coarsen( *cur, max_vw, rng );
    if ( lvl.graph.num_vertices() * 10 > cur->num_vertices() * 9 )
    {
      break;
    }
    levels.push_back( std::move( lvl ) );
    cur = &levels.back().graph;
  }

  /* initial bisection: several growing starts, keep the best after FM */
  std::vector<std::uint32_t> best;
  std::uint64_t best_cut = 0, best_excess = 0;
  auto const cn = cur->num_vertices();
  constexpr std::uint32_t tries = 8;
  for ( std::uint32_t t = 0; t < tries; ++t )
  {
    auto const start = static_cast<std::uint32_t>( rng() % cn );
    auto side = grow_bisection( *cur, start, target0 );
    fm_refiner fm( *cur, side, bound );
    auto const c = fm.run();
    auto const ex = bound_excess( cur->part_weights( side, 2 ), bound );
    if ( best.empty() || ex < best_excess || ( ex == best_excess && c < best_cut ) )
    {
      best = std::move( side );
      best_cut = c;
      best_excess = ex;
    }
  }

  /* uncoarsen with refinement */
  for ( auto i = levels.size(); i-- > 0; )
  {
    weighted_graph const& fine = i == 0 ? g : levels[i - 1].graph;
    std::vector<std::uint32_t> side( fine.num_vertices() );
    for ( std::uint32_t v = 0; v < fine.num_vertices(); ++v )
    {
      side[v] = best[levels[i].map[v]];
    }
    fm_refiner fm( fine, side, bound );
    fm.run();
    best = std::move( side );
  }
  return best;
}

/* Moves vertices out of parts above `cap` into the most connected part with room. */
inline void repair_overload( weighted_graph const& g, std::vector<std::uint32_t>& part, std::uint32_t k, std::uint64_t cap )
{
  auto pw = g.part_weights( part, k );
  for ( std::uint32_t p = 0; p < k; ++p )
  {
    while ( pw[p] > cap )
    {
      std::uint32_t best_v = g.num_vertices(), best_t = k;
      std::int64_t best_score = std::numeric_limits<std::int64_t>::min();
      for ( std::uint32_t v = 0; v < g.num_vertices(); ++v )
      {
        if ( part[v] != p )
        {
          continue;
        }
        std::vector<std::int64_t> conn( k, 0 );
        g.foreach_neighbor( v, [&]( auto u, auto w ) { conn[part[u]] += static_cast<std::int64_t>( w ); } );
        for ( std::uint32_t t = 0; t < k; ++t )
        {
          if ( t == p || pw[t] + g.vertex_weight( v ) > cap )
          {
            continue;
          }
          auto const score = conn[t] - conn[p];
          if ( score > best_score )
          {
            best_score = score;
            best_v = v;
            best_t = t;
          }
        }
      }
      if ( best_t == k )
      {
        return; /* infeasible with this granularity */
      }
      pw[p] -= g.vertex_weight( best_v );
      pw[best_t] += g.vertex_weight( best_v );
      part[best_v] = best_t;
    }
  }
}

inline void recursive_bisection( weighted_graph const& g, std::vector<std::uint32_t> const& vertices, std::uint32_t first_part,
                                 std::uint32_t k, std::uint64_t cap, double epsilon_step, std::vector<std::uint32_t>& part,
                                 std::mt19937_64& rng )
{
  if ( k == 1 || vertices.size() <= 1 )
  {
    for ( auto v : vertices )
    {
      part[v] = first_part;
    }
    return;
  }
  auto const sub = g.induced( vertices );
  auto const total = sub.total_weight();
  auto const k0 = ( k + 1 ) / 2, k1 = k - k0;
  auto const target0 = ( total * k0 + k - 1 ) / k;
  auto side_bound = [&]( std::uint32_t ki ) {
    auto const ideal = ( total * ki + k - 1 ) / k;
    auto const relaxed = static_cast<std::uint64_t>( static_cast<double>( ideal ) * ( 1.0 + epsilon_step ) );
    return std::min<std::uint64_t>( relaxed, cap * ki );
  };
  auto const side = bisect( sub, target0, { side_bound( k0 ), side_bound( k1 ) }, rng );
  std::vector<std::uint32_t> left, right;
  for ( std::uint32_t i = 0; i < vertices.size(); ++i )
  {
    ( side[i] == 0 ? left : right ).push_back( vertices[i] );
  }
  recursive_bisection( g, left, first_part, k0, cap, epsilon_step, part, rng );
  recursive_bisection( g, right, first_part + k0, k1, cap, epsilon_step, part, rng );
}

} // namespace detail

struct kway_result
{
  std::vector<std::uint32_t> part; /* per vertex */
  std::uint32_t k{ 1 };
  std::uint64_t cut{ 0 };
  std::vector<std::uint64_t> part_weight;
  bool feasible{ true }; /* every part within the cap */
};

/*! \brief k-way partition minimizing cut weight subject to part weight <= cap.
 *
 * Recursive bisection splits the imbalance allowance (cap relative to the
 * average) evenly across the log2(k) levels.
 */
inline kway_result partition_graph( weighted_graph const& g, std::uint32_t k, std::uint64_t cap, std::uint64_t seed )
{
  kway_result res;
  res.k = std::max<std::uint32_t>( k, 1 );
  res.part.assign( g.num_vertices(), 0 );
  std::mt19937_64 rng( seed );
  auto const total = g.total_weight();
  auto const avg = ( total + res.k - 1 ) / res.k;
  double eps_step = 0.0;
  if ( res.k > 1 && avg > 0 )
  {
    auto const slack = std::max( 1.0, static_cast<double>( cap ) / static_cast<double>( avg ) );
    auto const depth = std::ceil( std::log2( static_cast<double>( res.k ) ) );
    eps_step = std::pow( slack, 1.0 / depth ) - 1.0;
  }
  std::vector<std::uint32_t> all( g.num_vertices() );
  std::iota( all.begin(), all.end(), 0u );
  detail::recursive_bisection( g, all, 0, res.k, cap, eps_step, res.part, rng );
  detail::repair_overload( g, res.part, res.k, cap );
  res.part_weight = g.part_weights( res.part, res.k );
  res.cut = g.cut( res.part );
  res.feasible = std::all_of( res.part_weight.begin(), res.part_weight.end(), [&]( auto w ) { return w <= cap; } );
  return res;
}

/*! \brief Uniformly random assignment subject to the same cap: shuffled
    vertices go to a random part with room, else the lightest part. */
inline std::vector<std::uint32_t> random_balanced_assignment( weighted_graph const& g, std::uint32_t k, std::uint64_t cap,
                                                              std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  std::vector<std::uint32_t> order( g.num_vertices() );
  std::iota( order.begin(), order.end(), 0u );
  detail::shuffle( order, rng );
  std::vector<std::uint32_t> part( g.num_vertices(), 0 );
  std::vector<std::uint64_t> pw( k, 0 );
  for ( auto v : order )
  {
    auto p = static_cast<std::uint32_t>( rng() % k );
    if ( pw[p] + g.vertex_weight( v ) > cap )
    {
      p = static_cast<std::uint32_t>( std::min_element( pw.begin(), pw.end() ) - pw.begin() );
    }
    part[v] = p;
    pw[p] += g.vertex_weight( v );
  }
  return part;
}

} // namespace aigpart
