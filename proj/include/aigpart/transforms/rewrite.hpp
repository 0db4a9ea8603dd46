/*!
  \file rewrite.hpp
  \brief Cut-based DAG-aware rewriting with truth-table resynthesis.
*/

#pragma once

#include "../aig.hpp"
#include "cuts.hpp"
#include "local.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace aigpart
{

/*! \brief One rewriting pass over the nodes in topological order.
 *
 * Each 4-input priority cut of a node is resynthesized from its truth table;
 * the best candidate with positive gain (or zero gain if `zero_gain`) and no
 * level increase replaces the node.
 */
inline aig_network rewrite( aig_network const& net, bool zero_gain = false )
{
  if ( net.num_ands() == 0 )
  {
    return net;
  }
  detail::mutable_aig m( net );
  detail::cut_manager cuts( m );
  auto const last = net.size();
  for ( auto n = net.first_and(); n < last; ++n )
  {
    if ( !m.is_live_and( n ) )
    {
      continue;
    }
    auto const cut_set = cuts.cuts( n );
    std::optional<detail::replacement> best;
    for ( std::size_t c = 1; c < cut_set.size(); ++c )
    {
      auto const& cu = cut_set[c];
      std::vector<std::uint32_t> leaves( cu.begin(), cu.end() );
      bool live = true;
      for ( auto l : leaves )
      {
        live = live && !m.is_dead( l );
      }
      if ( !live )
      {
        continue;
      }
      auto tt = detail::cone_function( m, n, leaves, 4 );
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
      if ( cand && detail::better( *cand, best ) )
      {
        best = std::move( cand );
      }
    }
    if ( best && ( best->gain > 0 || ( zero_gain && best->gain == 0 ) ) )
    {
      detail::commit( m, n, *best );
    }
  }
  return detail::finish_pass( net, m );
}

} // namespace aigpart
