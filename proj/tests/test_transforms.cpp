#include <aigpart/equiv.hpp>
#include <aigpart/strash.hpp>
#include <aigpart/transforms/actions.hpp>

#include <gtest/gtest.h>

#include "support/random_aig.hpp"

using namespace aigpart;

namespace
{

aig_network chain( std::uint32_t n )
{
  aig_network net;
  std::vector<literal> x;
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    x.push_back( net.create_pi( "x" + std::to_string( i ) ) );
  }
  auto acc = x.back();
  for ( auto i = n - 1; i-- > 0; )
  {
    acc = net.create_and( x[i], acc );
  }
  net.create_po( acc, "f" );
  return net;
}

/* random nets for the soundness suites: mixed sizes, some with locality */
aig_network suite_net( std::uint64_t seed )
{
  auto const pis = 3 + static_cast<std::uint32_t>( seed % 10 );
  return strash( test::random_aig( seed, { .num_pis = pis,
                                           .num_ands = 20 + static_cast<std::uint32_t>( ( seed * 7 ) % 180 ),
                                           .num_pos = 1 + static_cast<std::uint32_t>( seed % 6 ),
                                           .window = seed % 2 ? 12u : 0u } ) );
}

} // namespace

TEST( actions, tokens_round_trip )
{
  for ( auto a : all_actions )
  {
    EXPECT_EQ( parse_action( token( a ) ), a );
  }
  EXPECT_EQ( to_string( parse_flow( "b rw  rwz\nrf rfz rs" ) ), "b rw rwz rf rfz rs" );
  EXPECT_THROW( parse_flow( "b xx" ), std::invalid_argument );
  EXPECT_EQ( to_string( baseline_flow() ), "b rw rf b rw rwz b rfz rwz b" );
}

TEST( actions, empty_network_unchanged )
{
  aig_network empty;
  for ( auto a : all_actions )
  {
    auto [res, st] = apply( empty, a );
    EXPECT_EQ( res, empty );
    EXPECT_EQ( st.nodes_after, 0u );
  }
  EXPECT_EQ( baseline_script( empty ), empty );
}

TEST( actions, stats_match_fresh_measurements )
{
  auto net = suite_net( 17 );
  for ( auto a : all_actions )
  {
    auto [res, st] = apply( net, a );
    EXPECT_EQ( st.nodes_before, net.num_ands() );
    EXPECT_EQ( st.depth_before, depth( net ) );
    EXPECT_EQ( st.nodes_after, res.num_ands() );
    EXPECT_EQ( st.depth_after, depth( res ) );
    EXPECT_GE( st.wall_time, 0.0 );
  }
}

TEST( balance, chain_examples )
{
  auto four = chain( 4 );
  auto [b4, st] = apply( four, action::balance );
  EXPECT_EQ( depth( four ), 3u );
  EXPECT_EQ( st.depth_after, 2u );
  EXPECT_EQ( st.nodes_after, 3u );

  auto eight = chain( 8 );
  EXPECT_EQ( depth( eight ), 7u );
  auto b8 = balance( eight );
  EXPECT_EQ( depth( b8 ), 3u );
  EXPECT_EQ( b8.num_ands(), 7u );
  EXPECT_FALSE( is_counter_example( check_equiv( eight, b8 ) ) );

  /* already balanced */
  EXPECT_EQ( balance( b8 ), b8 );
}

TEST( rewrite, redundant_structure_shrinks )
{
  /* f = (a & b) | (a & !b & c) | ... implemented wastefully: (a&b) | (a&(!b&c)) == a&(b|c) */
  aig_network net;
  auto a = net.create_pi( "a" ), b = net.create_pi( "b" ), c = net.create_pi( "c" );
  auto t1 = net.create_and( a, b );
  auto t2 = net.create_and( a, net.create_and( !b, c ) );
  net.create_po( net.create_or( t1, t2 ), "f" );
  ASSERT_EQ( net.num_ands(), 4u );
  auto res = rewrite( net );
  EXPECT_LT( res.num_ands(), net.num_ands() );
  EXPECT_EQ( res.num_ands(), 2u );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( check_equiv( net, res ) ) );
}

TEST( rewrite, redundant_mux_to_three_ands )
{
  /* s ? a : b built with a duplicated select path: 4 ANDs */
  aig_network net;
  auto s = net.create_pi( "s" ), a = net.create_pi( "a" ), b = net.create_pi( "b" );
  auto t = net.create_and( s, a );
  auto e = net.create_and( !s, b );
  auto both = net.create_and( a, b );
  auto f = net.create_or( net.create_or( t, e ), both );
  net.create_po( f, "f" );
  ASSERT_GE( net.num_ands(), 4u );
  auto res = rewrite( net );
  EXPECT_LE( res.num_ands(), 3u );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( check_equiv( net, res ) ) );
}

TEST( rewrite, constant_cone_folds )
{
  aig_network net;
  auto a = net.create_pi( "a" ), b = net.create_pi( "b" );
  auto g = net.create_and( a, b );
  auto h = net.create_and( !a, b );
  net.create_po( net.create_and( g, h ), "f" ); /* a & !a & b */
  auto res = rewrite( net );
  EXPECT_EQ( res.num_ands(), 0u );
  EXPECT_EQ( res.po( 0 ).driver, const0 );
}

namespace
{

/* 3-input parity written as a sum of the four odd minterms */
aig_network parity_sop()
{
  aig_network net;
  auto a = net.create_pi( "a" ), b = net.create_pi( "b" ), c = net.create_pi( "c" );
  auto m1 = net.create_and( net.create_and( a, !b ), !c );
  auto m2 = net.create_and( net.create_and( !a, b ), !c );
  auto m3 = net.create_and( net.create_and( !a, !b ), c );
  auto m4 = net.create_and( net.create_and( a, b ), c );
  net.create_po( net.create_or( net.create_or( m1, m2 ), net.create_or( m3, m4 ) ), "p" );
  return net;
}

} // namespace

TEST( refactor, parity_of_three )
{
  auto net = parity_sop();
  ASSERT_GT( net.num_ands(), 6u );
  auto res = refactor( net );
  EXPECT_EQ( res.num_ands(), 6u );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( check_equiv( net, res ) ) );
}

TEST( refactor, skips_cones_with_too_many_leaves )
{
  /* every multi-node MFFC of the parity net has 3 leaves */
  auto net = parity_sop();
  EXPECT_EQ( refactor( net, true, 2 ), net );
}

TEST( resub, duplicated_logic_is_shared )
{
  aig_network net;
  auto a = net.create_pi( "a" ), b = net.create_pi( "b" ), c = net.create_pi( "c" );
  auto g = net.create_and( net.create_and( a, b ), c );
  /* same function, different structure: (a & c) & b */
  auto h = net.create_and( net.create_and( a, c ), b );
  net.create_po( g, "f" );
  net.create_po( h, "g" );
  ASSERT_EQ( net.num_ands(), 4u );
  auto res = resub( net );
  EXPECT_EQ( res.num_ands(), 2u );
  EXPECT_EQ( res.po( 0 ).driver, res.po( 1 ).driver );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( check_equiv( net, res ) ) );
}

TEST( resub, no_divisor_leaves_network_unchanged )
{
  aig_network net;
  auto a = net.create_pi( "a" ), b = net.create_pi( "b" );
  net.create_po( net.create_and( a, b ), "f" );
  EXPECT_EQ( resub( net ), net );
}

TEST( transforms, soundness_and_gain_discipline )
{
  for ( std::uint64_t seed = 0; seed < 300; ++seed )
  {
    auto net = suite_net( seed );
    auto const d = depth( net );
    for ( auto a : all_actions )
    {
      auto res = apply_action( net, a );
      auto v = check_equiv( net, res );
      ASSERT_FALSE( is_counter_example( v ) ) << "seed " << seed << " action " << token( a );
      ASSERT_LE( res.num_ands(), net.num_ands() ) << "seed " << seed << " action " << token( a );
      if ( a == action::balance )
      {
        ASSERT_LE( depth( res ), d ) << "seed " << seed;
      }
      ASSERT_EQ( strash( res ), res ) << "output not strashed, action " << token( a );
    }
  }
}

TEST( transforms, baseline_script_improves_most_random_nets )
{
  int improved = 0, total = 0;
  for ( std::uint64_t seed = 0; seed < 100; ++seed )
  {
    auto net = suite_net( seed + 5000 );
    auto res = baseline_script( net );
    ASSERT_FALSE( is_counter_example( check_equiv( net, res ) ) );
    auto adp = []( aig_network const& n ) { return std::uint64_t{ n.num_ands() } * ( depth( n ) + 1 ); };
    improved += adp( res ) <= adp( net ) ? 1 : 0;
    ++total;
  }
  EXPECT_GE( improved * 10, total * 9 );
}
