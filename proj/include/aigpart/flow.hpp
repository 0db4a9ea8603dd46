/*!
  \file flow.hpp
  \brief End-to-end flow: partition, optimize parts in parallel, merge, verify, report.
*/

#pragma once

#include "aig.hpp"
#include "equiv.hpp"
#include "io/aiger.hpp"
#include "io/blif.hpp"
#include "merge.hpp"
#include "partition/pipeline.hpp"
#include "report/qor.hpp"
#include "rl/parallel.hpp"
#include "transforms/actions.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace aigpart
{

struct flow_config
{
  partition_config partition;
  optimize_budget budget;
  policy_config policy;
  std::uint32_t workers{ 1 };
  equiv_policy equiv;
};

struct flow_outcome
{
  qor_row row;
  equiv_verdict verdict;
  aig_network merged;
  partitioned_network partitioned;
  std::vector<part_result> results;

  bool verified() const { return !is_counter_example( verdict ); }
};

class config_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Overrides `cfg` with the keys present in a JSON config object; unknown keys are errors. */
inline void apply_config( flow_config& cfg, nlohmann::json const& j )
{
  if ( !j.is_object() )
  {
    throw config_error( "config must be a JSON object" );
  }
  using setter = std::function<void( nlohmann::json const& )>;
  std::map<std::string, setter> const setters = {
      { "max_part_size", [&]( auto const& v ) { cfg.partition.max_part_size = v.template get<std::uint32_t>(); } },
      { "epsilon", [&]( auto const& v ) { cfg.partition.epsilon = v.template get<double>(); } },
      { "fallback_threshold", [&]( auto const& v ) { cfg.partition.fallback_threshold = v.template get<double>(); } },
      { "min_parts", [&]( auto const& v ) { cfg.partition.min_parts = v.template get<std::uint32_t>(); } },
      { "seed", [&]( auto const& v ) { cfg.budget.seed = cfg.partition.seed = v.template get<std::uint64_t>(); } },
      { "episodes", [&]( auto const& v ) { cfg.budget.max_episodes = v.template get<std::uint32_t>(); } },
      { "episode_length", [&]( auto const& v ) { cfg.budget.episode_length = v.template get<std::uint32_t>(); } },
      { "wall_seconds", [&]( auto const& v ) { cfg.budget.max_wall_seconds = v.template get<double>(); } },
      { "workers", [&]( auto const& v ) { cfg.workers = v.template get<std::uint32_t>(); } },
      { "temperature", [&]( auto const& v ) { cfg.policy.temperature = v.template get<double>(); } },
      { "learning_rate", [&]( auto const& v ) { cfg.policy.learning_rate = v.template get<double>(); } },
      { "random_patterns", [&]( auto const& v ) { cfg.equiv.random_pattern_count = v.template get<std::uint64_t>(); } } };
  for ( auto const& [key, v] : j.items() )
  {
    auto const it = setters.find( key );
    if ( it == setters.end() )
    {
      throw config_error( "unknown config key '" + key + "'" );
    }
    try
    {
      it->second( v );
    }
    catch ( nlohmann::json::exception const& )
    {
      throw config_error( "config key '" + key + "' has the wrong type" );
    }
  }
  cfg.partition.validate();
  cfg.budget.validate();
  cfg.policy.validate();
}

/*! \brief Reads BLIF when the path ends in .blif, AIGER otherwise. */
inline aig_network read_network( std::string const& path )
{
  if ( std::filesystem::path( path ).extension() == ".blif" )
  {
    return parse_blif( read_file( path ) );
  }
  return read_aiger_file( path );
}

/*! \brief Runs the flow on `net`. With a non-empty `out_dir` every intermediate artifact is written there.
 *
 * Run directory layout: original.aig, manifest.json, part_<p>.aig, and for each
 * part part_<p>.opt.aig, part_<p>.flow and part_<p>.trace.jsonl; then
 * merged.aig, baseline.aig, verify.txt, report.txt and report.json.
 */
inline flow_outcome run_flow( aig_network const& net, std::string const& name, flow_config const& cfg,
                              std::filesystem::path const& out_dir = {} )
{
  bool const persist = !out_dir.empty();
  auto path = [&]( std::string const& f ) { return ( out_dir / f ).string(); };
  if ( persist )
  {
    std::filesystem::create_directories( out_dir );
    write_aiger_file( path( "original.aig" ), net );
  }

  flow_outcome out;
  out.partitioned = partition_network( net, cfg.partition );
  if ( persist )
  {
    write_partition( out_dir, out.partitioned );
  }

  out.results = run_parallel( out.partitioned.parts, cfg.budget, cfg.workers, cfg.policy );
  std::vector<aig_network> optimized;
  for ( std::size_t p = 0; p < out.results.size(); ++p )
  {
    auto const& r = out.results[p];
    optimized.push_back( r.result.best );
    out.row.fallback_parts += r.fallback ? 1 : 0;
    if ( persist )
    {
      auto const stem = "part_" + std::to_string( p );
      write_aiger_file( path( stem + ".opt.aig" ), r.result.best );
      write_file( path( stem + ".flow" ), to_string( r.result.best_flow ) + "\n" );
      write_file( path( stem + ".trace.jsonl" ), traces_to_json_lines( r.result.traces ) );
    }
  }

  out.merged = merge( out.partitioned.manifest, optimized );
  out.verdict = verify_merge( net, out.merged, cfg.equiv );
  auto const baseline = baseline_script( net );
  if ( persist )
  {
    write_aiger_file( path( "merged.aig" ), out.merged );
    write_aiger_file( path( "baseline.aig" ), baseline );
    write_file( path( "verify.txt" ), to_string( out.verdict ) + "\n" );
  }

  out.row.name = name;
  out.row.no_opt = qor( net );
  out.row.baseline = qor( baseline );
  out.row.ours = qor( out.merged );
  out.row.parts = static_cast<std::uint32_t>( out.partitioned.parts.size() );
  out.row.verified = out.verified();
  if ( persist )
  {
    write_file( path( "report.txt" ), format_table( { out.row } ) );
    write_file( path( "report.json" ), format_json( { out.row } ) );
  }
  return out;
}

inline flow_outcome flow_end_to_end( std::string const& input_path, std::filesystem::path const& out_dir,
                                     flow_config const& cfg = {} )
{
  auto const net = read_network( input_path );
  return run_flow( net, std::filesystem::path( input_path ).stem().string(), cfg, out_dir );
}

} // namespace aigpart
