#include "corpus.hpp"

#include <gtest/gtest.h>

#include "support/random_aig.hpp"

#include <bit>
#include <cmath>
#include <random>

using namespace aigpart;
using namespace aigpart::corpus;

namespace
{

std::vector<bool> bits_of( std::initializer_list<std::pair<std::uint64_t, std::uint32_t>> fields )
{
  std::vector<bool> v;
  for ( auto [value, width] : fields )
  {
    for ( std::uint32_t i = 0; i < width; ++i )
    {
      v.push_back( ( value >> i ) & 1u );
    }
  }
  return v;
}

std::vector<bool> run( aig_network const& net, std::vector<bool> const& in )
{
  test::scalar_evaluator ev( net, in );
  std::vector<bool> out;
  for ( auto const& po : net.pos() )
  {
    out.push_back( ev.lit( po.driver ) );
  }
  return out;
}

std::uint64_t field( std::vector<bool> const& v, std::uint32_t lo, std::uint32_t width )
{
  std::uint64_t x = 0;
  for ( std::uint32_t i = 0; i < width; ++i )
  {
    x |= std::uint64_t{ v[lo + i] } << i;
  }
  return x;
}

} // namespace

TEST( corpus, arithmetic_circuits_compute_their_functions )
{
  std::mt19937_64 rng( 1 );
  auto const add = adder( 16 ), mul = multiplier( 8 ), sq = square( 8 ), div = divider( 8 ), rt = square_root( 8 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    auto const a = rng() & 0xffff, b = rng() & 0xffff;
    EXPECT_EQ( field( run( add, bits_of( { { a, 16 }, { b, 16 } } ) ), 0, 17 ), a + b );
    auto const x = a & 0xff, y = b & 0xff;
    EXPECT_EQ( field( run( mul, bits_of( { { x, 8 }, { y, 8 } } ) ), 0, 16 ), x * y );
    EXPECT_EQ( field( run( sq, bits_of( { { x, 8 } } ) ), 0, 16 ), x * x );
    if ( y != 0 )
    {
      auto const o = run( div, bits_of( { { x, 8 }, { y, 8 } } ) );
      EXPECT_EQ( field( o, 0, 8 ), x / y ) << x << "/" << y;
      EXPECT_EQ( field( o, 8, 8 ), x % y ) << x << "%" << y;
    }
    EXPECT_EQ( field( run( rt, bits_of( { { a, 16 } } ) ), 0, 8 ),
               static_cast<std::uint64_t>( std::sqrt( static_cast<double>( a ) ) ) )
        << a;
  }
}

TEST( corpus, control_circuits_compute_their_functions )
{
  std::mt19937_64 rng( 2 );
  auto const pri = priority_encoder( 16 ), dec = decoder( 4 ), vote = voter( 15 ), par = parity( 20 );
  auto const mx = maximum( 3, 8 ), sh = barrel_shifter( 4 ), a = alu( 8 ), i2f = int_to_float( 16, 6 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    auto const r = rng() & 0xffff;
    auto const po = run( pri, bits_of( { { r, 16 } } ) );
    EXPECT_EQ( po[4], r != 0 );
    if ( r != 0 )
    {
      EXPECT_EQ( field( po, 0, 4 ), static_cast<std::uint64_t>( std::countr_zero( r ) ) );
    }
    auto const s = r & 15;
    auto const d = run( dec, bits_of( { { s, 4 } } ) );
    for ( std::uint32_t v = 0; v < 16; ++v )
    {
      EXPECT_EQ( d[v], v == s );
    }
    auto const v15 = r & 0x7fff;
    EXPECT_EQ( run( vote, bits_of( { { v15, 15 } } ) )[0], std::popcount( v15 ) > 7 );
    auto const p20 = rng() & 0xfffff;
    EXPECT_EQ( run( par, bits_of( { { p20, 20 } } ) )[0], std::popcount( p20 ) % 2 == 1 );
    auto const x0 = rng() & 0xff, x1 = rng() & 0xff, x2 = rng() & 0xff;
    EXPECT_EQ( field( run( mx, bits_of( { { x0, 8 }, { x1, 8 }, { x2, 8 } } ) ), 0, 8 ), std::max( { x0, x1, x2 } ) );
    auto const data = rng() & 0xffff, amount = rng() & 15;
    auto const rot = ( ( data << amount ) | ( data >> ( 16 - amount ) ) ) & 0xffff;
    EXPECT_EQ( field( run( sh, bits_of( { { data, 16 }, { amount, 4 } } ) ), 0, 16 ), amount ? rot : data );
    for ( std::uint64_t op = 0; op < 6; ++op )
    {
      std::uint64_t const expect[] = { ( x0 + x1 ) & 0xff, ( x0 - x1 ) & 0xff, x0 & x1, x0 | x1, x0 ^ x1, x0 < x1 ? 1u : 0u };
      auto const o = run( a, bits_of( { { x0, 8 }, { x1, 8 }, { op, 3 } } ) );
      EXPECT_EQ( field( o, 0, 8 ), expect[op] ) << "op " << op;
      EXPECT_EQ( o[8], expect[op] != 0 );
    }
    if ( data != 0 )
    {
      auto const o = run( i2f, bits_of( { { data, 16 } } ) );
      auto const msb = 15 - std::countl_zero( static_cast<std::uint16_t>( data ) );
      EXPECT_EQ( field( o, 0, 4 ), static_cast<std::uint64_t>( msb ) );
      EXPECT_EQ( field( o, 4, 6 ), ( ( data << ( 15 - msb ) ) >> 10 ) & 0x3f );
    }
  }
}

TEST( corpus, arbiter_grants_one_eligible_request )
{
  std::mt19937_64 rng( 3 );
  auto const arb = arbiter( 16 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    auto const req = rng() & 0xffff;
    auto const ptr_pos = rng() % 16;
    auto const g = field( run( arb, bits_of( { { req, 16 }, { 1ull << ptr_pos, 16 } } ) ), 0, 16 );
    if ( req == 0 )
    {
      EXPECT_EQ( g, 0u );
      continue;
    }
    std::uint64_t expect = 0;
    for ( std::uint64_t k = 0; k < 16; ++k )
    {
      auto const i = ( ptr_pos + k ) % 16;
      if ( ( req >> i ) & 1u )
      {
        expect = 1ull << i;
        break;
      }
    }
    EXPECT_EQ( g, expect );
  }
}

TEST( corpus, standard_corpus_shape )
{
  auto const entries = standard_corpus();
  EXPECT_GE( entries.size(), 20u );
  for ( auto const& e : entries )
  {
    auto const net = e.make();
    EXPECT_EQ( net.num_latches(), 0u ) << e.name;
    EXPECT_LE( net.num_ands(), 50000u ) << e.name;
    EXPECT_GT( net.num_ands(), 100u ) << e.name;
    EXPECT_EQ( net.name(), e.name );
  }
}
