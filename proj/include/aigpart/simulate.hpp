/*!
  \file simulate.hpp
  \brief Word-parallel bit-vector simulation.
*/

#pragma once

#include "aig.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aigpart
{

/*! \brief Fixed-width bit vector stored in 64-bit words; bits past `width` are kept zero. */
class sim_vector
{
public:
  sim_vector() = default;
  explicit sim_vector( std::size_t width, bool value = false )
      : width_( width ), words_( ( width + 63 ) / 64, value ? ~std::uint64_t{ 0 } : 0u )
  {
    mask_tail();
  }

  /*! \brief Parses an MSB-first string such as "1100" (bit 0 is the rightmost character). */
  static sim_vector from_string( std::string const& bits )
  {
    sim_vector v( bits.size() );
    for ( std::size_t i = 0; i < bits.size(); ++i )
    {
      if ( bits[bits.size() - 1 - i] == '1' )
      {
        v.set( i, true );
      }
    }
    return v;
  }

  std::string to_string() const
  {
    std::string s( width_, '0' );
    for ( std::size_t i = 0; i < width_; ++i )
    {
      if ( get( i ) )
      {
        s[width_ - 1 - i] = '1';
      }
    }
    return s;
  }

  std::size_t width() const { return width_; }
  std::size_t num_words() const { return words_.size(); }
  std::vector<std::uint64_t>& words() { return words_; }
  std::vector<std::uint64_t> const& words() const { return words_; }

  bool get( std::size_t i ) const { return ( words_[i >> 6] >> ( i & 63 ) ) & 1u; }
  void set( std::size_t i, bool v )
  {
    auto const m = std::uint64_t{ 1 } << ( i & 63 );
    words_[i >> 6] = v ? ( words_[i >> 6] | m ) : ( words_[i >> 6] & ~m );
  }

  void mask_tail()
  {
    if ( auto const r = width_ & 63; r != 0 && !words_.empty() )
    {
      words_.back() &= ( std::uint64_t{ 1 } << r ) - 1;
    }
  }

  bool operator==( sim_vector const& ) const = default;

private:
  std::size_t width_{ 0 };
  std::vector<std::uint64_t> words_;
};

/*! \brief Simulation values of every node, using one word block per node.
 *
 * `inputs` holds one vector per combinational input (PIs then latch outputs,
 * the latter treated as free pseudo-inputs); all must share one width.
 */
inline std::vector<sim_vector> simulate_nodes( aig_network const& net, std::vector<sim_vector> const& inputs )
{
  auto const num_cis = net.num_pis() + net.num_latches();
  if ( inputs.size() != num_cis )
  {
    throw std::invalid_argument( "simulation needs " + std::to_string( num_cis ) + " input vectors, got " +
                                 std::to_string( inputs.size() ) );
  }
  std::size_t const width = inputs.empty() ? 1 : inputs.front().width();
  for ( auto const& v : inputs )
  {
    if ( v.width() != width )
    {
      throw std::invalid_argument( "simulation input vectors differ in width" );
    }
  }
  std::vector<sim_vector> values( net.size() );
  values[0] = sim_vector( width );
  for ( std::uint32_t i = 0; i < num_cis; ++i )
  {
    values[1 + i] = inputs[i];
  }
  auto const nw = values[0].num_words();
  net.foreach_and( [&]( auto id, auto const& g ) {
    sim_vector out( width );
    auto const& a = values[g.fanin0.node()].words();
    auto const& b = values[g.fanin1.node()].words();
    auto const ma = g.fanin0.complemented() ? ~std::uint64_t{ 0 } : 0u;
    auto const mb = g.fanin1.complemented() ? ~std::uint64_t{ 0 } : 0u;
    auto& o = out.words();
    for ( std::size_t w = 0; w < nw; ++w )
    {
      o[w] = ( a[w] ^ ma ) & ( b[w] ^ mb );
    }
    out.mask_tail();
    values[id] = std::move( out );
  } );
  return values;
}

inline sim_vector literal_value( std::vector<sim_vector> const& values, literal l )
{
  auto v = values[l.node()];
  if ( l.complemented() )
  {
    for ( auto& w : v.words() )
    {
      w = ~w;
    }
    v.mask_tail();
  }
  return v;
}

/*! \brief Per-PO simulation results. */
inline std::vector<sim_vector> simulate( aig_network const& net, std::vector<sim_vector> const& inputs )
{
  auto const values = simulate_nodes( net, inputs );
  std::vector<sim_vector> res;
  res.reserve( net.num_pos() );
  for ( auto const& po : net.pos() )
  {
    res.push_back( literal_value( values, po.driver ) );
  }
  return res;
}

namespace detail
{

/* Raw word simulation used by equivalence checking and resubstitution; `words`
   words per node, inputs already filled for the combinational inputs. */
inline void simulate_words( aig_network const& net, std::vector<std::uint64_t>& sim, std::size_t words )
{
  sim.resize( std::size_t{ net.size() } * words );
  std::fill_n( sim.begin(), words, 0u );
  net.foreach_and( [&]( auto id, auto const& g ) {
    auto const* a = &sim[std::size_t{ g.fanin0.node() } * words];
    auto const* b = &sim[std::size_t{ g.fanin1.node() } * words];
    auto* o = &sim[std::size_t{ id } * words];
    auto const ma = g.fanin0.complemented() ? ~std::uint64_t{ 0 } : 0u;
    auto const mb = g.fanin1.complemented() ? ~std::uint64_t{ 0 } : 0u;
    for ( std::size_t w = 0; w < words; ++w )
    {
      o[w] = ( a[w] ^ ma ) & ( b[w] ^ mb );
    }
  } );
}

} // namespace detail

} // namespace aigpart
