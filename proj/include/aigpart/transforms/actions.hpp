/*!
  \file actions.hpp
  \brief Action alphabet over the transforms, flow parsing and the fixed baseline script.
*/

#pragma once

#include "../aig.hpp"
#include "../strash.hpp"
#include "balance.hpp"
#include "refactor.hpp"
#include "resub.hpp"
#include "rewrite.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aigpart
{

enum class action : std::uint8_t
{
  balance,
  rewrite,
  rewrite_z,
  refactor,
  refactor_z,
  resub
};

inline constexpr std::uint32_t num_actions = 6;
inline constexpr std::array<action, num_actions> all_actions = { action::balance,  action::rewrite,    action::rewrite_z,
                                                                 action::refactor, action::refactor_z, action::resub };

inline std::string_view token( action a )
{
  static constexpr std::array<std::string_view, num_actions> tokens = { "b", "rw", "rwz", "rf", "rfz", "rs" };
  return tokens[static_cast<std::size_t>( a )];
}

inline std::optional<action> parse_action( std::string_view tok )
{
  for ( auto a : all_actions )
  {
    if ( token( a ) == tok )
    {
      return a;
    }
  }
  return std::nullopt;
}

using flow = std::vector<action>;

inline std::string to_string( flow const& f )
{
  std::string s;
  for ( auto a : f )
  {
    if ( !s.empty() )
    {
      s.push_back( ' ' );
    }
    s += token( a );
  }
  return s;
}

/*! \brief Parses whitespace-separated action tokens; throws std::invalid_argument on unknown tokens. */
inline flow parse_flow( std::string_view text )
{
  flow f;
  std::istringstream in{ std::string( text ) };
  std::string tok;
  while ( in >> tok )
  {
    auto a = parse_action( tok );
    if ( !a )
    {
      throw std::invalid_argument( "unknown action '" + tok + "'" );
    }
    f.push_back( *a );
  }
  return f;
}

struct step_stats
{
  std::uint32_t nodes_before{ 0 };
  std::uint32_t nodes_after{ 0 };
  std::uint32_t depth_before{ 0 };
  std::uint32_t depth_after{ 0 };
  double wall_time{ 0.0 }; /* seconds */
};

inline aig_network apply_action( aig_network const& net, action a )
{
  switch ( a )
  {
  case action::balance:
    return balance( net );
  case action::rewrite:
    return rewrite( net, false );
  case action::rewrite_z:
    return rewrite( net, true );
  case action::refactor:
    return refactor( net, false );
  case action::refactor_z:
    return refactor( net, true );
  case action::resub:
    return resub( net );
  }
  return net;
}

/*! \brief Applies one action to a strashed network and measures it. */
inline std::pair<aig_network, step_stats> apply( aig_network const& net, action a )
{
  step_stats st;
  st.nodes_before = net.num_ands();
  st.depth_before = depth( net );
  auto const start = std::chrono::steady_clock::now();
  auto res = apply_action( net, a );
  st.wall_time = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  st.nodes_after = res.num_ands();
  st.depth_after = depth( res );
  return { std::move( res ), st };
}

inline aig_network apply_flow( aig_network net, flow const& f )
{
  for ( auto a : f )
  {
    net = apply_action( net, a );
  }
  return net;
}

/*! \brief The fixed comparison script: b; rw; rf; b; rw; rwz; b; rfz; rwz; b. */
inline flow const& baseline_flow()
{
  static flow const f = parse_flow( "b rw rf b rw rwz b rfz rwz b" );
  return f;
}

inline aig_network baseline_script( aig_network const& net )
{
  return apply_flow( strash( net ), baseline_flow() );
}

} // namespace aigpart
