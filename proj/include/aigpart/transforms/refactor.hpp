/*!
  \file refactor.hpp
  \brief MFFC collapsing and resynthesis.
*/

#pragma once

#include "../aig.hpp"
#include "local.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace aigpart
{

/*! \brief Collapses each node's MFFC (when it has at most `max_leaves` leaves) into a
 *  truth table and replaces it by the resynthesized cone if that saves nodes. */
inline aig_network refactor( aig_network const& net, bool zero_gain = false, std::uint32_t max_leaves = 10 )
{
  if ( net.num_ands() == 0 )
  {
    return net;
  }
  detail::mutable_aig m( net );
  auto const last = net.size();
  for ( auto n = net.first_and(); n < last; ++n )
  {
    if ( !m.is_live_and( n ) )
    {
      continue;
    }
    auto const members = detail::deref_cone( m, n, {} );
    detail::reref_cone( m, members, {} );
    if ( members.size() < 2 )
    {
      continue;
    }
    auto sorted = members;
    std::sort( sorted.begin(), sorted.end() );
    std::vector<std::uint32_t> leaves;
    for ( auto x : members )
    {
      for ( auto f : { m.fanin0( x ).node(), m.fanin1( x ).node() } )
      {
        if ( !std::binary_search( sorted.begin(), sorted.end(), f ) )
        {
          leaves.push_back( f );
        }
      }
    }
    std::sort( leaves.begin(), leaves.end() );
    leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );
    if ( leaves.size() > max_leaves )
    {
      continue;
    }
    auto const k = static_cast<std::uint32_t>( leaves.size() );
    auto tt = detail::cone_function( m, n, leaves, k );
    if ( !tt )
    {
      continue;
    }
    std::vector<literal> lits;
    for ( auto l : leaves )
    {
      lits.emplace_back( l, false );
    }
    auto cand = detail::try_cone( m, n, leaves, resynth_tt( *tt ), std::move( lits ) );
    if ( cand && ( cand->gain > 0 || ( zero_gain && cand->gain == 0 ) ) )
    {
      detail::commit( m, n, *cand );
    }
  }
  return detail::finish_pass( net, m );
}

} // namespace aigpart
