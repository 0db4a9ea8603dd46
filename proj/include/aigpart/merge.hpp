/*!
  \file merge.hpp
  \brief Reassembly of optimized parts into one network, and its verification.
*/

#pragma once

#include "aig.hpp"
#include "equiv.hpp"
#include "partition/manifest.hpp"
#include "sequential.hpp"
#include "strash.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aigpart
{

class merge_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail
{

inline std::unordered_map<std::string, std::uint32_t> name_index( std::vector<std::string> const& names,
                                                                  std::string const& what )
{
  std::unordered_map<std::string, std::uint32_t> index;
  for ( std::uint32_t i = 0; i < names.size(); ++i )
  {
    if ( !index.emplace( names[i], i ).second )
    {
      throw merge_error( "interface mismatch: duplicate " + what + " '" + names[i] + "'" );
    }
  }
  return index;
}

inline std::vector<std::string> part_input_names( aig_network const& p )
{
  std::vector<std::string> names;
  for ( std::uint32_t i = 0; i < p.num_pis(); ++i )
  {
    names.push_back( p.pi_name( i ) );
  }
  return names;
}

inline std::vector<std::string> part_output_names( aig_network const& p )
{
  std::vector<std::string> names;
  for ( std::uint32_t o = 0; o < p.num_pos(); ++o )
  {
    names.push_back( p.po_name( o ) );
  }
  return names;
}

} // namespace detail

/*! \brief Replaces every boundary PI by the literal driving the matching boundary PO,
 *         restores the original outputs and latches, and strashes the result.
 *
 * Part interfaces are matched by name, so optimized parts may reorder their
 * PIs and POs. Throws merge_error on a missing boundary pair, a dangling
 * boundary name, an interface mismatch, or a combinational cycle.
 */
inline aig_network merge( partition_manifest const& man, std::vector<aig_network> const& parts )
{
  if ( parts.size() != man.parts.size() )
  {
    throw merge_error( "interface mismatch: manifest lists " + std::to_string( man.parts.size() ) + " parts, got " +
                       std::to_string( parts.size() ) );
  }
  auto const k = static_cast<std::uint32_t>( parts.size() );
  std::vector<std::unordered_map<std::string, std::uint32_t>> pi_of( k ), po_of( k );
  for ( std::uint32_t p = 0; p < k; ++p )
  {
    if ( parts[p].num_latches() != 0 )
    {
      throw merge_error( "interface mismatch: part " + std::to_string( p ) + " has latches" );
    }
    pi_of[p] = detail::name_index( detail::part_input_names( parts[p] ), "input" );
    po_of[p] = detail::name_index( detail::part_output_names( parts[p] ), "output" );
    auto const expected_pis = std::set<std::string>( man.parts[p].pis.begin(), man.parts[p].pis.end() );
    auto const expected_pos = std::set<std::string>( man.parts[p].pos.begin(), man.parts[p].pos.end() );
    auto const got_pis = detail::part_input_names( parts[p] );
    auto const got_pos = detail::part_output_names( parts[p] );
    if ( expected_pis != std::set<std::string>( got_pis.begin(), got_pis.end() ) ||
         expected_pos != std::set<std::string>( got_pos.begin(), got_pos.end() ) )
    {
      throw merge_error( "interface mismatch: part " + std::to_string( p ) + " changed its PI/PO names" );
    }
  }

  /* (sink part, wire) -> driver part */
  std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> driver_of;
  for ( auto const& b : man.boundary_pairs )
  {
    if ( b.driver_part >= k || b.sink_part >= k )
    {
      throw merge_error( "dangling boundary '" + b.wire + "': part out of range" );
    }
    if ( !po_of[b.driver_part].count( b.wire ) )
    {
      throw merge_error( "dangling boundary '" + b.wire + "': no such output in part " + std::to_string( b.driver_part ) );
    }
    if ( !pi_of[b.sink_part].count( b.wire ) )
    {
      throw merge_error( "dangling boundary '" + b.wire + "': no such input in part " + std::to_string( b.sink_part ) );
    }
    if ( !driver_of.emplace( std::pair{ b.sink_part, b.wire }, b.driver_part ).second )
    {
      throw merge_error( "duplicate boundary pair for '" + b.wire + "'" );
    }
  }

  aig_network comb;
  comb.set_name( man.model );
  std::unordered_map<std::string, literal> original_pi;
  for ( std::uint32_t i = 0; i < man.pis.size(); ++i )
  {
    original_pi.emplace( resolved_pi_name( man.pis[i], i ), comb.create_pi( man.pis[i] ) );
  }
  for ( std::uint32_t p = 0; p < k; ++p )
  {
    for ( std::uint32_t i = 0; i < parts[p].num_pis(); ++i )
    {
      auto const name = parts[p].pi_name( i );
      if ( is_cut_name( name ) )
      {
        if ( !driver_of.count( { p, name } ) )
        {
          throw merge_error( "missing boundary pair for input '" + name + "' of part " + std::to_string( p ) );
        }
      }
      else if ( !original_pi.count( name ) )
      {
        throw merge_error( "interface mismatch: part " + std::to_string( p ) + " reads unknown input '" + name + "'" );
      }
    }
  }

  /* demand-driven resolution across part boundaries */
  std::vector<std::vector<literal>> lit( k );
  std::vector<std::vector<std::uint8_t>> state( k ); /* 0 new, 1 open, 2 done */
  for ( std::uint32_t p = 0; p < k; ++p )
  {
    lit[p].assign( parts[p].size(), const0 );
    state[p].assign( parts[p].size(), 0 );
    state[p][0] = 2;
  }
  auto resolve = [&]( std::uint32_t p0, std::uint32_t n0 ) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{ { p0, n0 } };
    while ( !stack.empty() )
    {
      auto const [p, n] = stack.back();
      auto const& net = parts[p];
      if ( state[p][n] == 2 )
      {
        stack.pop_back();
        continue;
      }
      /* the dependencies of (p, n), in the order they are consumed */
      std::vector<std::pair<std::uint32_t, std::uint32_t>> deps;
      literal via{ 0u };
      if ( net.is_pi( n ) )
      {
        auto const name = net.pi_name( n - 1 );
        if ( !is_cut_name( name ) )
        {
          lit[p][n] = original_pi.at( name );
          state[p][n] = 2;
          stack.pop_back();
          continue;
        }
        auto const d = driver_of.at( { p, name } );
        via = parts[d].po( po_of[d].at( name ) ).driver;
        deps.emplace_back( d, via.node() );
      }
      else
      {
        deps.emplace_back( p, net.fanin0( n ).node() );
        deps.emplace_back( p, net.fanin1( n ).node() );
      }
      bool ready = true;
      for ( auto it = deps.rbegin(); it != deps.rend(); ++it )
      {
        auto const s = state[it->first][it->second];
        if ( s == 0 )
        {
          stack.push_back( *it );
          ready = false;
        }
        else if ( s == 1 && !( it->first == p && it->second == n ) )
        {
          throw merge_error( "combinational cycle through part boundaries" );
        }
      }
      if ( !ready )
      {
        if ( state[p][n] == 1 )
        {
          throw merge_error( "combinational cycle through part boundaries" );
        }
        state[p][n] = 1;
        continue;
      }
      if ( net.is_pi( n ) )
      {
        auto const d = deps[0].first;
        lit[p][n] = lit[d][via.node()] ^ via.complemented();
      }
      else
      {
        auto const f0 = net.fanin0( n ), f1 = net.fanin1( n );
        lit[p][n] = comb.create_and( lit[p][f0.node()] ^ f0.complemented(), lit[p][f1.node()] ^ f1.complemented() );
      }
      state[p][n] = 2;
      stack.pop_back();
    }
  };

  for ( std::uint32_t o = 0; o < man.pos.size(); ++o )
  {
    auto const& entry = man.pos[o];
    auto const name = resolved_po_name( entry.name, o );
    if ( entry.part >= k || !po_of[entry.part].count( name ) )
    {
      throw merge_error( "interface mismatch: output '" + name + "' missing from part " + std::to_string( entry.part ) );
    }
    auto const driver = parts[entry.part].po( po_of[entry.part].at( name ) ).driver;
    resolve( entry.part, driver.node() );
    comb.create_po( lit[entry.part][driver.node()] ^ driver.complemented(), entry.name );
  }
  return attach_shell( strash( comb ), man.shell );
}

/*! \brief Equivalence of the merged network against the original, latches cut positionally. */
inline equiv_verdict verify_merge( aig_network const& original, aig_network const& merged, equiv_policy const& policy = {} )
{
  if ( original.num_pis() != merged.num_pis() || original.num_pos() != merged.num_pos() ||
       original.num_latches() != merged.num_latches() )
  {
    throw interface_mismatch( "merged network has a different interface" );
  }
  return check_equiv( original, merged, policy );
}

} // namespace aigpart
