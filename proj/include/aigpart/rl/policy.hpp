/*!
  \file policy.hpp
  \brief Flow state features and the linear softmax policy trained by REINFORCE.
*/

#pragma once

#include "../transforms/actions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

namespace aigpart
{

inline constexpr std::uint32_t num_features = 3 + 2 * num_actions;

using feature_vector = std::array<double, num_features>;

/*! \brief [size ratio, depth ratio, step/L, one-hot last action, one-hot second-to-last action].
 *
 * Ratios are (x + 1) / (x0 + 1) so that empty and depth-0 networks stay finite and positive.
 */
inline feature_vector flow_features( std::uint32_t nodes, std::uint32_t depth, std::uint32_t nodes0, std::uint32_t depth0,
                                     std::uint32_t step, std::uint32_t length, std::optional<action> last,
                                     std::optional<action> second_last )
{
  feature_vector f{};
  f[0] = ( nodes + 1.0 ) / ( nodes0 + 1.0 );
  f[1] = ( depth + 1.0 ) / ( depth0 + 1.0 );
  f[2] = length == 0 ? 0.0 : static_cast<double>( step ) / length;
  if ( last )
  {
    f[3 + static_cast<std::size_t>( *last )] = 1.0;
  }
  if ( second_last )
  {
    f[3 + num_actions + static_cast<std::size_t>( *second_last )] = 1.0;
  }
  return f;
}

struct policy_config
{
  double temperature{ 1.0 };
  double learning_rate{ 0.01 };

  void validate() const
  {
    if ( !( temperature > 0.0 ) || !std::isfinite( temperature ) )
    {
      throw std::invalid_argument( "temperature must be positive" );
    }
    if ( !( learning_rate > 0.0 ) || !std::isfinite( learning_rate ) )
    {
      throw std::invalid_argument( "learning_rate must be positive" );
    }
  }
};

/* uniform double in [0, 1) from the top 53 bits; identical on every standard library */
inline double unit_real( std::mt19937_64& rng )
{
  return static_cast<double>( rng() >> 11 ) * 0x1.0p-53;
}

class linear_policy
{
public:
  using weights_t = std::array<std::array<double, num_features>, num_actions>;

  explicit linear_policy( policy_config const& cfg = {} ) : cfg_( cfg ) { cfg_.validate(); }

  weights_t const& weights() const { return w_; }
  policy_config const& config() const { return cfg_; }

  std::array<double, num_actions> probabilities( feature_vector const& f ) const
  {
    std::array<double, num_actions> z{};
    for ( std::uint32_t a = 0; a < num_actions; ++a )
    {
      double s = 0.0;
      for ( std::uint32_t j = 0; j < num_features; ++j )
      {
        s += w_[a][j] * f[j];
      }
      z[a] = s / cfg_.temperature;
    }
    auto const mx = *std::max_element( z.begin(), z.end() );
    double sum = 0.0;
    for ( auto& v : z )
    {
      v = std::exp( v - mx );
      sum += v;
    }
    for ( auto& v : z )
    {
      v /= sum;
    }
    return z;
  }

  action sample( feature_vector const& f, std::mt19937_64& rng ) const
  {
    auto const p = probabilities( f );
    auto u = unit_real( rng );
    for ( std::uint32_t a = 0; a + 1 < num_actions; ++a )
    {
      if ( u < p[a] )
      {
        return all_actions[a];
      }
      u -= p[a];
    }
    return all_actions[num_actions - 1];
  }

  /*! \brief One gradient-ascent step on advantage * log pi(a | f). */
  void reinforce( feature_vector const& f, action a, double advantage )
  {
    auto const p = probabilities( f );
    auto const scale = cfg_.learning_rate * advantage / cfg_.temperature;
    for ( std::uint32_t b = 0; b < num_actions; ++b )
    {
      auto const g = ( all_actions[b] == a ? 1.0 : 0.0 ) - p[b];
      for ( std::uint32_t j = 0; j < num_features; ++j )
      {
        w_[b][j] += scale * g * f[j];
      }
    }
  }

private:
  policy_config cfg_;
  weights_t w_{};
};

} // namespace aigpart
