/*!
  \file pipeline.hpp
  \brief Full partitioning: latch extraction, clustering, packing, k-way
         splitting of oversized groups, and stitching.
*/

#pragma once

#include "../aig.hpp"
#include "../io/aiger.hpp"
#include "../mffc.hpp"
#include "../sequential.hpp"
#include "../strash.hpp"
#include "cluster.hpp"
#include "manifest.hpp"
#include "oversized.hpp"
#include "stitch.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace aigpart
{

/*! \brief Partitions a (possibly sequential) network into parts of at most max_part_size ANDs.
 *
 * Clusters that fit are packed without cutting edges. Each oversized group is
 * split on its MFFC graph. If clustering fails (see fallback_threshold), or
 * fewer than `min_parts` parts would be produced, the whole combinational
 * core is split as a single group instead.
 */
inline partitioned_network partition_network( aig_network const& net, partition_config const& cfg = {} )
{
  cfg.validate();
  auto [raw_comb, shell] = extract_comb( net );
  auto const comb = strash( raw_comb );
  auto const num_ands = static_cast<std::uint64_t>( comb.num_ands() );
  auto const k_needed = static_cast<std::uint32_t>( ( num_ands + cfg.max_part_size - 1 ) / cfg.max_part_size );

  auto const clusters = cluster_by_boundaries( comb, shell );
  auto groups = pack_clusters( clusters, cfg );
  std::uint64_t largest = 0;
  for ( auto const& c : clusters )
  {
    largest = std::max<std::uint64_t>( largest, c.members.size() );
  }
  bool const clustering_failed =
      static_cast<double>( largest ) > cfg.fallback_threshold * cfg.max_part_size && clusters.size() < k_needed;
  auto const k_min = std::min<std::uint64_t>( cfg.min_parts, num_ands );
  bool const whole = clustering_failed || groups.size() < k_min;

  std::vector<std::uint32_t> assignment( comb.size(), 0 );
  std::vector<std::uint32_t> exploded;
  mffc_decomposition dec;
  bool have_dec = false;
  auto split = [&]( std::vector<std::uint32_t> const& members, std::uint32_t base, std::uint32_t kmin ) {
    if ( !have_dec )
    {
      dec = decompose( comb );
      have_dec = true;
    }
    auto const r = partition_oversized( comb, dec, members, cfg, kmin );
    for ( auto n : members )
    {
      assignment[n] = base + r.part[n];
    }
    exploded.insert( exploded.end(), r.exploded_roots.begin(), r.exploded_roots.end() );
    return r.k;
  };

  if ( whole && num_ands > 0 )
  {
    std::vector<std::uint32_t> members;
    for ( auto id = comb.first_and(); id < comb.size(); ++id )
    {
      members.push_back( id );
    }
    split( members, 0, static_cast<std::uint32_t>( std::max<std::uint64_t>( k_min, 1 ) ) );
  }
  else
  {
    std::uint32_t next_part = 0;
    for ( auto const& g : groups )
    {
      std::vector<std::uint32_t> members;
      for ( auto c : g.clusters )
      {
        members.insert( members.end(), clusters[c].members.begin(), clusters[c].members.end() );
      }
      std::sort( members.begin(), members.end() );
      if ( g.oversized )
      {
        next_part += split( members, next_part, 1 );
      }
      else
      {
        for ( auto n : members )
        {
          assignment[n] = next_part;
        }
        ++next_part;
      }
    }
  }
  std::sort( exploded.begin(), exploded.end() );
  auto res = cut_and_stitch( comb, assignment, shell );
  res.manifest.exploded_mffcs = std::move( exploded );
  res.manifest.clustering_fallback = clustering_failed;
  return res;
}

/*! \brief Writes `manifest.json` and one AIGER file per part into `dir`. */
inline void write_partition( std::filesystem::path const& dir, partitioned_network const& pn )
{
  std::filesystem::create_directories( dir );
  for ( std::size_t p = 0; p < pn.parts.size(); ++p )
  {
    write_aiger_file( ( dir / pn.manifest.parts[p].file ).string(), pn.parts[p] );
  }
  write_file( ( dir / "manifest.json" ).string(), dump_manifest( pn.manifest ) );
}

/*! \brief Reads a run directory; `suffix` selects alternative part files (e.g. ".opt"). */
inline partitioned_network read_partition( std::filesystem::path const& dir, std::string const& suffix = {} )
{
  partitioned_network pn;
  pn.manifest = parse_manifest( read_file( ( dir / "manifest.json" ).string() ) );
  for ( auto const& p : pn.manifest.parts )
  {
    auto file = p.file;
    if ( !suffix.empty() )
    {
      file = std::filesystem::path( file ).stem().string() + suffix + std::filesystem::path( file ).extension().string();
    }
    pn.parts.push_back( read_aiger_file( ( dir / file ).string() ) );
  }
  return pn;
}

} // namespace aigpart
