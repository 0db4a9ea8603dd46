/*!
  \file optimizer.hpp
  \brief Per-part flow exploration: REINFORCE episodes over the action alphabet with keep-best.
*/

#pragma once

#include "../aig.hpp"
#include "../equiv.hpp"
#include "../strash.hpp"
#include "../transforms/actions.hpp"
#include "policy.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aigpart
{

struct optimize_budget
{
  std::uint32_t max_episodes{ 200 };
  double max_wall_seconds{ 3600.0 }; /* advisory; episode counts are the reproducible unit */
  std::uint32_t episode_length{ 10 };
  std::uint64_t seed{ 1 };

  void validate() const
  {
    if ( max_episodes == 0 || episode_length == 0 || !( max_wall_seconds > 0.0 ) || seed == 0 )
    {
      throw std::invalid_argument( "optimization budget entries must be positive" );
    }
  }
};

/*! \brief Area-delay proxy: nodes * (depth + 1). */
inline double flow_cost( std::uint32_t nodes, std::uint32_t depth )
{
  return static_cast<double>( nodes ) * ( static_cast<double>( depth ) + 1.0 );
}

inline double flow_cost( aig_network const& net )
{
  return flow_cost( net.num_ands(), depth( net ) );
}

/*! \brief Normalized cost reduction of one step; zero when the action changed nothing. */
inline double reward( step_stats const& st, double initial_cost )
{
  auto const before = flow_cost( st.nodes_before, st.depth_before );
  auto const after = flow_cost( st.nodes_after, st.depth_after );
  return before == after ? 0.0 : ( before - after ) / initial_cost;
}

struct episode_trace
{
  flow actions;
  std::vector<step_stats> stats;
  std::vector<double> rewards;
  double final_cost{ 0.0 };
};

struct optimize_result
{
  aig_network best;
  flow best_flow;
  double initial_cost{ 0.0 };
  double best_cost{ 0.0 };
  std::uint32_t episodes{ 0 };
  std::uint32_t actions_evaluated{ 0 }; /* cache misses */
  bool budget_exhausted{ false };       /* no episode completed within the wall budget */
  std::vector<episode_trace> traces;
};

class optimizer_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

namespace detail
{

inline std::uint64_t network_hash( aig_network const& net )
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&]( std::uint64_t v ) {
    h ^= v + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
  };
  mix( net.num_pis() );
  mix( net.num_ands() );
  for ( auto const& g : net.gates() )
  {
    mix( ( static_cast<std::uint64_t>( g.fanin0.value ) << 32 ) | g.fanin1.value );
  }
  for ( auto const& po : net.pos() )
  {
    mix( po.driver.value );
  }
  return h;
}

/* Transforms are deterministic, so (state, action) -> state is memoized.
   States are deduplicated by structure; most actions revisit known states. */
class transition_cache
{
public:
  explicit transition_cache( std::uint64_t max_stored_ands ) : max_stored_ands_( max_stored_ands ) {}

  std::uint32_t add( aig_network net )
  {
    auto const h = network_hash( net );
    auto [it, fresh] = by_hash_.try_emplace( h, static_cast<std::uint32_t>( states_.size() ) );
    if ( !fresh )
    {
      return it->second;
    }
    state s;
    s.nodes = net.num_ands();
    s.depth = depth( net );
    stored_ands_ += s.nodes;
    s.net = std::move( net );
    s.next.fill( none );
    states_.push_back( std::move( s ) );
    return it->second;
  }

  /* returns the successor state and whether the transform had to run */
  std::pair<std::uint32_t, bool> step( std::uint32_t from, action a )
  {
    auto const ai = static_cast<std::size_t>( a );
    if ( states_[from].next[ai] != none )
    {
      return { states_[from].next[ai], false };
    }
    auto res = apply_action( states_[from].net, a );
    std::uint32_t to;
    if ( stored_ands_ + res.num_ands() > max_stored_ands_ && !by_hash_.count( network_hash( res ) ) )
    {
      /* over the memory cap: reuse the scratch slot */
      if ( scratch_ == none )
      {
        scratch_ = static_cast<std::uint32_t>( states_.size() );
        states_.emplace_back();
      }
      to = scratch_;
      states_[to].nodes = res.num_ands();
      states_[to].depth = depth( res );
      states_[to].net = std::move( res );
      states_[to].next.fill( none );
      return { to, true };
    }
    to = add( std::move( res ) );
    if ( from != scratch_ )
    {
      states_[from].next[ai] = to;
    }
    return { to, true };
  }

  aig_network const& net( std::uint32_t s ) const { return states_[s].net; }
  std::uint32_t nodes( std::uint32_t s ) const { return states_[s].nodes; }
  std::uint32_t depth_of( std::uint32_t s ) const { return states_[s].depth; }
  bool is_scratch( std::uint32_t s ) const { return s == scratch_; }

private:
  static constexpr std::uint32_t none = UINT32_MAX;
  struct state
  {
    aig_network net;
    std::uint32_t nodes{ 0 };
    std::uint32_t depth{ 0 };
    std::array<std::uint32_t, num_actions> next{};
  };
  std::vector<state> states_;
  std::unordered_map<std::uint64_t, std::uint32_t> by_hash_;
  std::uint64_t stored_ands_{ 0 };
  std::uint64_t max_stored_ands_;
  std::uint32_t scratch_{ none };
};

} // namespace detail

/*! \brief Learns a flow for one combinational part and returns the cheapest network seen.
 *
 * After each episode the policy takes a REINFORCE step per action with
 * advantage = reward-to-go minus the running mean of past returns from that
 * step. The best network is checked against the input before it is returned;
 * a counter-example means a transform is broken and raises optimizer_error.
 */
inline optimize_result optimize_partition( aig_network const& input, optimize_budget const& budget = {},
                                           policy_config const& pcfg = {} )
{
  budget.validate();
  if ( input.num_latches() != 0 )
  {
    throw std::invalid_argument( "optimize_partition expects a combinational network" );
  }
  optimize_result res;
  res.best = input;
  res.initial_cost = res.best_cost = flow_cost( input );
  if ( input.num_ands() == 0 )
  {
    return res;
  }

  auto const start_time = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    return std::chrono::duration<double>( std::chrono::steady_clock::now() - start_time ).count() > budget.max_wall_seconds;
  };

  auto const L = budget.episode_length;
  detail::transition_cache cache( std::uint64_t{ 1 } << 24 );
  auto const root = cache.add( strash( input ) );
  auto const nodes0 = cache.nodes( root ), depth0 = cache.depth_of( root );
  auto const cost0 = res.initial_cost;

  constexpr auto no_state = UINT32_MAX;
  std::optional<aig_network> kept; /* best network when it lives in the scratch slot */
  auto best_state = no_state;
  if ( flow_cost( nodes0, depth0 ) < res.best_cost )
  {
    best_state = root;
    res.best_cost = flow_cost( nodes0, depth0 );
  }

  linear_policy policy( pcfg );
  std::mt19937_64 rng( budget.seed );
  std::vector<double> baseline( L, 0.0 );
  std::uint32_t completed = 0;
  bool timed_out = false;

  for ( std::uint32_t ep = 0; ep < budget.max_episodes && !timed_out; ++ep )
  {
    episode_trace tr;
    std::vector<feature_vector> feats;
    auto s = root;
    std::optional<action> last, second;
    for ( std::uint32_t t = 0; t < L; ++t )
    {
      if ( out_of_time() )
      {
        timed_out = true;
        break;
      }
      auto const f = flow_features( cache.nodes( s ), cache.depth_of( s ), nodes0, depth0, t, L, last, second );
      auto const a = policy.sample( f, rng );
      step_stats st;
      st.nodes_before = cache.nodes( s );
      st.depth_before = cache.depth_of( s );
      auto const t0 = std::chrono::steady_clock::now();
      auto const [next, ran] = cache.step( s, a );
      st.wall_time = ran ? std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count() : 0.0;
      res.actions_evaluated += ran ? 1 : 0;
      st.nodes_after = cache.nodes( next );
      st.depth_after = cache.depth_of( next );
      feats.push_back( f );
      tr.actions.push_back( a );
      tr.stats.push_back( st );
      tr.rewards.push_back( reward( st, cost0 ) );
      auto const c = flow_cost( st.nodes_after, st.depth_after );
      if ( c < res.best_cost )
      {
        res.best_cost = c;
        res.best_flow = tr.actions;
        if ( cache.is_scratch( next ) )
        {
          kept = cache.net( next );
          best_state = no_state;
        }
        else
        {
          best_state = next;
          kept.reset();
        }
      }
      second = last;
      last = a;
      s = next;
    }
    if ( timed_out )
    {
      break;
    }
    tr.final_cost = flow_cost( cache.nodes( s ), cache.depth_of( s ) );

    /* reward-to-go, baseline from previous episodes only */
    double g = 0.0;
    std::vector<double> ret( L );
    for ( auto t = L; t-- > 0; )
    {
      g += tr.rewards[t];
      ret[t] = g;
    }
    for ( std::uint32_t t = 0; t < L; ++t )
    {
      policy.reinforce( feats[t], tr.actions[t], ret[t] - baseline[t] );
    }
    ++completed;
    for ( std::uint32_t t = 0; t < L; ++t )
    {
      baseline[t] += ( ret[t] - baseline[t] ) / completed;
    }
    res.traces.push_back( std::move( tr ) );
  }
  res.episodes = completed;

  if ( completed == 0 )
  {
    res.best = input;
    res.best_flow.clear();
    res.best_cost = res.initial_cost;
    res.budget_exhausted = true;
    return res;
  }
  if ( kept )
  {
    res.best = std::move( *kept );
  }
  else if ( best_state != no_state )
  {
    res.best = cache.net( best_state );
  }
  auto const verdict = check_equiv( input, res.best );
  if ( is_counter_example( verdict ) )
  {
    throw optimizer_error( "internal error: flow '" + to_string( res.best_flow ) +
                           "' changed the function of the network (" + to_string( verdict ) + ")" );
  }
  return res;
}

/*! \brief One JSON object per episode: actions, per-step sizes, depths, rewards and the final cost. */
inline std::string traces_to_json_lines( std::vector<episode_trace> const& traces )
{
  std::string out;
  for ( std::size_t e = 0; e < traces.size(); ++e )
  {
    auto const& tr = traces[e];
    auto acts = nlohmann::ordered_json::array();
    auto nodes = nlohmann::ordered_json::array();
    auto depths = nlohmann::ordered_json::array();
    auto secs = nlohmann::ordered_json::array();
    for ( std::size_t t = 0; t < tr.actions.size(); ++t )
    {
      acts.push_back( std::string( token( tr.actions[t] ) ) );
      nodes.push_back( tr.stats[t].nodes_after );
      depths.push_back( tr.stats[t].depth_after );
      secs.push_back( tr.stats[t].wall_time );
    }
    nlohmann::ordered_json j;
    j["episode"] = e;
    j["actions"] = std::move( acts );
    j["nodes"] = std::move( nodes );
    j["depth"] = std::move( depths );
    j["seconds"] = std::move( secs );
    j["rewards"] = tr.rewards;
    j["final_cost"] = tr.final_cost;
    out += j.dump();
    out.push_back( '\n' );
  }
  return out;
}

} // namespace aigpart
