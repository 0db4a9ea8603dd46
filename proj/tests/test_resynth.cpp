#include <aigpart/resynth.hpp>
#include <aigpart/truth_table.hpp>

#include <gtest/gtest.h>

#include <random>

#include "support/random_aig.hpp"

using namespace aigpart;

namespace
{

/* truth table of a cone's PO computed by scalar evaluation over all minterms */
std::vector<bool> cone_function( aig_network const& cone )
{
  return test::po_truth_tables( cone )[0];
}

std::vector<bool> bits_of( truth_table const& tt )
{
  std::vector<bool> b( tt.num_bits() );
  for ( std::size_t m = 0; m < b.size(); ++m )
  {
    b[m] = tt.get_bit( m );
  }
  return b;
}

truth_table random_tt( std::mt19937_64& rng, std::uint32_t k )
{
  truth_table tt( k );
  for ( std::size_t m = 0; m < tt.num_bits(); ++m )
  {
    tt.set_bit( m, rng() & 1u );
  }
  return tt;
}

} // namespace

TEST( truth_table, variables_and_cofactors )
{
  for ( std::uint32_t k : { 1u, 3u, 6u, 8u } )
  {
    for ( std::uint32_t v = 0; v < k; ++v )
    {
      auto x = truth_table::nth_var( k, v );
      for ( std::size_t m = 0; m < x.num_bits(); ++m )
      {
        ASSERT_EQ( x.get_bit( m ), ( ( m >> v ) & 1u ) != 0 );
      }
      EXPECT_TRUE( x.cofactor0( v ).is_const0() );
      EXPECT_TRUE( x.cofactor1( v ).is_const1() );
      EXPECT_TRUE( x.depends_on( v ) );
      EXPECT_EQ( x.count_ones(), x.num_bits() / 2 );
    }
  }
  std::mt19937_64 rng( 1 );
  for ( int trial = 0; trial < 50; ++trial )
  {
    auto const k = 1 + static_cast<std::uint32_t>( rng() % 9 );
    auto f = random_tt( rng, k );
    auto const v = static_cast<std::uint32_t>( rng() % k );
    auto c0 = f.cofactor0( v ), c1 = f.cofactor1( v );
    for ( std::size_t m = 0; m < f.num_bits(); ++m )
    {
      auto const m0 = m & ~( std::size_t{ 1 } << v ), m1 = m | ( std::size_t{ 1 } << v );
      ASSERT_EQ( c0.get_bit( m ), f.get_bit( m0 ) );
      ASSERT_EQ( c1.get_bit( m ), f.get_bit( m1 ) );
    }
  }
}

TEST( isop, cover_is_exact_and_irredundant )
{
  std::mt19937_64 rng( 2 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    auto const k = 1 + static_cast<std::uint32_t>( rng() % 10 );
    auto f = random_tt( rng, k );
    auto cubes = isop( f );
    ASSERT_EQ( cover_function( cubes, k ), f );
    /* irredundant: dropping any cube changes the function */
    for ( std::size_t i = 0; i < cubes.size() && k <= 6; ++i )
    {
      auto rest = cubes;
      rest.erase( rest.begin() + static_cast<std::ptrdiff_t>( i ) );
      EXPECT_NE( cover_function( rest, k ), f );
    }
  }
}

TEST( resynth_tt, known_sizes )
{
  auto and4 = truth_table::constant( 4, true );
  for ( std::uint32_t v = 0; v < 4; ++v )
  {
    and4 &= truth_table::nth_var( 4, v );
  }
  EXPECT_EQ( resynth_tt( and4 ).num_ands(), 3u );

  auto zero = resynth_tt( truth_table::constant( 4, false ) );
  EXPECT_EQ( zero.num_ands(), 0u );
  EXPECT_EQ( zero.po( 0 ).driver, const0 );

  auto xor2 = truth_table::nth_var( 2, 0 ) ^ truth_table::nth_var( 2, 1 );
  EXPECT_EQ( resynth_tt( xor2 ).num_ands(), 3u );

  auto par3 = truth_table::nth_var( 3, 0 ) ^ truth_table::nth_var( 3, 1 ) ^ truth_table::nth_var( 3, 2 );
  EXPECT_EQ( resynth_tt( par3 ).num_ands(), 6u );

  /* mux s ? a : b needs 3 ANDs */
  auto s = truth_table::nth_var( 3, 0 ), a = truth_table::nth_var( 3, 1 ), b = truth_table::nth_var( 3, 2 );
  EXPECT_EQ( resynth_tt( ( s & a ) | ( ~s & b ) ).num_ands(), 3u );
}

TEST( resynth_tt, output_function_equals_input_exhaustively )
{
  std::mt19937_64 rng( 3 );
  /* every 3-input function plus random functions up to 12 inputs */
  for ( std::uint32_t f = 0; f < 256; ++f )
  {
    truth_table tt( 3 );
    tt.words()[0] = f;
    ASSERT_EQ( cone_function( resynth_tt( tt ) ), bits_of( tt ) ) << f;
  }
  for ( int trial = 0; trial < 400; ++trial )
  {
    auto const k = 1 + static_cast<std::uint32_t>( rng() % 12 );
    auto tt = random_tt( rng, k );
    /* sparse functions exercise factoring */
    if ( trial % 3 == 0 )
    {
      tt &= random_tt( rng, k ) & random_tt( rng, k );
    }
    auto cone = resynth_tt( tt );
    ASSERT_EQ( cone.num_pis(), k );
    ASSERT_EQ( cone_function( cone ), bits_of( tt ) );
  }
}

TEST( resynth_tt, deterministic_and_inlines_into_target )
{
  std::mt19937_64 rng( 4 );
  auto tt = random_tt( rng, 5 );
  EXPECT_EQ( resynth_tt( tt ), resynth_tt( tt ) );

  aig_network net;
  std::vector<literal> leaves;
  for ( int i = 0; i < 5; ++i )
  {
    leaves.push_back( net.create_pi() );
  }
  /* bind the cone to complemented leaves in reverse order */
  std::vector<literal> bound( leaves.rbegin(), leaves.rend() );
  for ( auto& l : bound )
  {
    l = !l;
  }
  net.create_po( resynth_tt( net, tt, bound ) );
  auto const f = cone_function( net );
  for ( std::size_t m = 0; m < 32; ++m )
  {
    std::size_t inner = 0;
    for ( int i = 0; i < 5; ++i )
    {
      if ( !( ( m >> ( 4 - i ) ) & 1u ) )
      {
        inner |= std::size_t{ 1 } << i;
      }
    }
    ASSERT_EQ( f[m], tt.get_bit( inner ) );
  }
}
