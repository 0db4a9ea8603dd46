/*!
  \file parallel.hpp
  \brief Optimizes independent parts on a pool of worker threads.
*/

#pragma once

#include "../partition/manifest.hpp"
#include "optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace aigpart
{

inline std::uint64_t splitmix64( std::uint64_t x )
{
  x += 0x9e3779b97f4a7c15ull;
  x = ( x ^ ( x >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  x = ( x ^ ( x >> 27 ) ) * 0x94d049bb133111ebull;
  return x ^ ( x >> 31 );
}

/*! \brief Seed of one part's random stream; never zero. */
inline std::uint64_t part_seed( std::uint64_t global_seed, std::uint32_t part )
{
  auto const s = splitmix64( splitmix64( global_seed ) ^ part );
  return s == 0 ? 1 : s;
}

struct part_result
{
  std::uint32_t part{ 0 };
  optimize_result result;
  bool fallback{ false }; /* optimization failed; best is the baseline script output */
  std::string error;
};

using part_optimizer = std::function<optimize_result( aig_network const&, optimize_budget const&, policy_config const& )>;

/*! \brief Runs `optimize` on every part with `workers` threads.
 *
 * Each part's seed depends only on the global seed and the part index, so the
 * results do not depend on the worker count or on scheduling. A part whose
 * optimization throws gets the baseline script's output instead (or its own
 * input, if that is cheaper).
 */
inline std::vector<part_result> run_parallel( std::vector<aig_network> const& parts, optimize_budget const& budget,
                                              std::uint32_t workers, policy_config const& pcfg = {},
                                              part_optimizer const& optimize = {} )
{
  budget.validate();
  pcfg.validate();
  auto const n = static_cast<std::uint32_t>( parts.size() );
  std::vector<part_result> results( n );
  std::atomic<std::uint32_t> next{ 0 };

  auto job = [&]( std::uint32_t p ) {
    auto b = budget;
    b.seed = part_seed( budget.seed, p );
    auto& r = results[p];
    r.part = p;
    try
    {
      r.result = optimize ? optimize( parts[p], b, pcfg ) : optimize_partition( parts[p], b, pcfg );
    }
    catch ( std::exception const& e )
    {
      r.fallback = true;
      r.error = e.what();
      r.result = optimize_result{};
      r.result.initial_cost = flow_cost( parts[p] );
      auto base = baseline_script( parts[p] );
      if ( flow_cost( base ) <= r.result.initial_cost && !is_counter_example( check_equiv( parts[p], base ) ) )
      {
        r.result.best_cost = flow_cost( base );
        r.result.best = std::move( base );
        r.result.best_flow = baseline_flow();
      }
      else
      {
        r.result.best = parts[p];
        r.result.best_cost = r.result.initial_cost;
      }
    }
  };
  auto worker = [&]() {
    for ( auto p = next.fetch_add( 1 ); p < n; p = next.fetch_add( 1 ) )
    {
      job( p );
    }
  };

  auto const w = std::clamp<std::uint32_t>( workers, 1, std::max<std::uint32_t>( n, 1 ) );
  if ( w == 1 )
  {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  for ( std::uint32_t i = 0; i < w; ++i )
  {
    pool.emplace_back( worker );
  }
  for ( auto& t : pool )
  {
    t.join();
  }
  return results;
}

} // namespace aigpart
