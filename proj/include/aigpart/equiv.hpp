/*!
  \file equiv.hpp
  \brief Combinational equivalence checking by exhaustive or random simulation.

  There is no SAT engine: beyond `exhaustive_pi_limit` inputs the verdict is
  probabilistic and labelled as such.
*/

#pragma once

#include "aig.hpp"
#include "sequential.hpp"
#include "simulate.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace aigpart
{

struct equiv_policy
{
  std::uint32_t exhaustive_pi_limit{ 16 };
  std::uint64_t random_pattern_count{ 65536 };
  std::uint64_t seed{ 1 };
};

struct equivalent_exhaustive
{
  bool operator==( equivalent_exhaustive const& ) const = default;
};

struct probably_equivalent
{
  std::uint64_t pattern_count{ 0 };
  bool operator==( probably_equivalent const& ) const = default;
};

/*! \brief Distinguishing input: values in the first network's combinational input order. */
struct counter_example
{
  std::vector<bool> assignment;
  std::vector<std::string> input_names;
  std::uint32_t po_index{ 0 }; /* index into the first network's combinational outputs */
  std::string po_name;
  bool operator==( counter_example const& ) const = default;
};

using equiv_verdict = std::variant<equivalent_exhaustive, probably_equivalent, counter_example>;

inline bool is_counter_example( equiv_verdict const& v )
{
  return std::holds_alternative<counter_example>( v );
}

inline std::string to_string( equiv_verdict const& v )
{
  if ( std::holds_alternative<equivalent_exhaustive>( v ) )
  {
    return "EquivalentExhaustive";
  }
  if ( auto const* p = std::get_if<probably_equivalent>( &v ) )
  {
    return "ProbablyEquivalent(" + std::to_string( p->pattern_count ) + ")";
  }
  auto const& cex = std::get<counter_example>( v );
  std::string s = "CounterExample(po=" + cex.po_name + ", inputs=";
  for ( bool b : cex.assignment )
  {
    s += b ? '1' : '0';
  }
  return s + ")";
}

class interface_mismatch : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail
{

inline std::vector<std::uint32_t> match_by_name( std::vector<std::string> const& a, std::vector<std::string> const& b,
                                                 char const* what )
{
  if ( a.size() != b.size() )
  {
    throw interface_mismatch( std::string( what ) + " counts differ: " + std::to_string( a.size() ) + " vs " +
                              std::to_string( b.size() ) );
  }
  std::unordered_map<std::string, std::uint32_t> index;
  for ( std::uint32_t i = 0; i < b.size(); ++i )
  {
    if ( !index.emplace( b[i], i ).second )
    {
      throw interface_mismatch( std::string( "duplicate " ) + what + " name '" + b[i] + "'" );
    }
  }
  std::vector<std::uint32_t> map( a.size() );
  std::unordered_set<std::string> seen;
  for ( std::uint32_t i = 0; i < a.size(); ++i )
  {
    auto it = index.find( a[i] );
    if ( it == index.end() )
    {
      throw interface_mismatch( std::string( what ) + " '" + a[i] + "' missing in second network" );
    }
    if ( !seen.insert( a[i] ).second )
    {
      throw interface_mismatch( std::string( "duplicate " ) + what + " name '" + a[i] + "'" );
    }
    map[i] = it->second;
  }
  return map;
}

inline std::vector<std::string> input_names( aig_network const& comb )
{
  std::vector<std::string> names;
  for ( std::uint32_t i = 0; i < comb.num_pis(); ++i )
  {
    names.push_back( comb.pi_name( i ) );
  }
  return names;
}

inline std::vector<std::string> output_names( aig_network const& comb )
{
  std::vector<std::string> names;
  for ( std::uint32_t i = 0; i < comb.num_pos(); ++i )
  {
    names.push_back( comb.po_name( i ) );
  }
  return names;
}

} // namespace detail

/*! \brief Checks two networks for combinational equivalence, matching PIs and POs by name.
 *
 * Latches are cut (see `extract_comb`) and matched positionally through their
 * pseudo-interface names. Throws interface_mismatch when the name sets differ.
 */
inline equiv_verdict check_equiv( aig_network const& a_in, aig_network const& b_in, equiv_policy const& policy = {} )
{
  auto const a = extract_comb( a_in ).first;
  auto const b = extract_comb( b_in ).first;
  auto const a_inputs = detail::input_names( a );
  auto const pi_map = detail::match_by_name( a_inputs, detail::input_names( b ), "input" );
  auto const po_map = detail::match_by_name( detail::output_names( a ), detail::output_names( b ), "output" );

  auto const n = a.num_pis();
  bool const exhaustive = n <= policy.exhaustive_pi_limit;
  std::uint64_t const total_patterns = exhaustive ? ( std::uint64_t{ 1 } << n ) : policy.random_pattern_count;
  std::uint64_t const total_words = std::max<std::uint64_t>( 1, ( total_patterns + 63 ) / 64 );
  constexpr std::uint64_t batch_words = 32;

  std::mt19937_64 rng( policy.seed );
  std::vector<std::uint64_t> sim_a, sim_b;
  sim_a.resize( std::size_t{ a.size() } * batch_words );
  sim_b.resize( std::size_t{ b.size() } * batch_words );

  for ( std::uint64_t base = 0; base < total_words; base += batch_words )
  {
    auto const words = static_cast<std::size_t>( std::min( batch_words, total_words - base ) );
    sim_a.assign( std::size_t{ a.size() } * words, 0u );
    sim_b.assign( std::size_t{ b.size() } * words, 0u );
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      for ( std::size_t w = 0; w < words; ++w )
      {
        std::uint64_t value;
        if ( exhaustive )
        {
          static constexpr std::uint64_t masks[6] = { 0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull,
                                                      0xf0f0f0f0f0f0f0f0ull, 0xff00ff00ff00ff00ull,
                                                      0xffff0000ffff0000ull, 0xffffffff00000000ull };
          value = i < 6 ? masks[i] : ( ( ( ( base + w ) >> ( i - 6 ) ) & 1u ) ? ~std::uint64_t{ 0 } : 0u );
        }
        else
        {
          value = rng();
        }
        sim_a[std::size_t{ a.pi_node( i ) } * words + w] = value;
        sim_b[std::size_t{ b.pi_node( pi_map[i] ) } * words + w] = value;
      }
    }
    detail::simulate_words( a, sim_a, words );
    detail::simulate_words( b, sim_b, words );

    std::uint64_t valid_tail = ~std::uint64_t{ 0 };
    if ( exhaustive && total_patterns < 64 )
    {
      valid_tail = ( std::uint64_t{ 1 } << total_patterns ) - 1;
    }
    for ( std::uint32_t o = 0; o < a.num_pos(); ++o )
    {
      auto const la = a.po( o ).driver;
      auto const lb = b.po( po_map[o] ).driver;
      auto const ma = la.complemented() ? ~std::uint64_t{ 0 } : 0u;
      auto const mb = lb.complemented() ? ~std::uint64_t{ 0 } : 0u;
      for ( std::size_t w = 0; w < words; ++w )
      {
        auto const diff = ( ( sim_a[std::size_t{ la.node() } * words + w] ^ ma ) ^
                            ( sim_b[std::size_t{ lb.node() } * words + w] ^ mb ) ) &
                          valid_tail;
        if ( diff == 0 )
        {
          continue;
        }
        auto const bit = static_cast<unsigned>( __builtin_ctzll( diff ) );
        counter_example cex;
        cex.input_names = a_inputs;
        cex.po_index = o;
        cex.po_name = a.po_name( o );
        for ( std::uint32_t i = 0; i < n; ++i )
        {
          cex.assignment.push_back( ( sim_a[std::size_t{ a.pi_node( i ) } * words + w] >> bit ) & 1u );
        }
        return cex;
      }
    }
  }
  if ( exhaustive )
  {
    return equivalent_exhaustive{};
  }
  return probably_equivalent{ total_words * 64 };
}

} // namespace aigpart
