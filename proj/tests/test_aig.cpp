#include <aigpart/aig.hpp>
#include <aigpart/equiv.hpp>
#include <aigpart/sequential.hpp>
#include <aigpart/simulate.hpp>
#include <aigpart/strash.hpp>

#include <gtest/gtest.h>

#include <random>

#include "support/random_aig.hpp"

using namespace aigpart;

namespace
{

/* checks the structural-hash invariant directly, without the table inside aig_network */
bool is_hashed( aig_network const& net )
{
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  bool ok = true;
  net.foreach_and( [&]( auto id, auto const& g ) {
    ok = ok && g.fanin0.node() < id && g.fanin1.node() < id;
    ok = ok && g.fanin0.value <= g.fanin1.value;
    ok = ok && !g.fanin0.is_constant() && g.fanin0.node() != g.fanin1.node();
    ok = ok && seen.emplace( g.fanin0.value, g.fanin1.value ).second;
  } );
  return ok;
}

} // namespace

TEST( literal, encoding )
{
  literal l( 5, true );
  EXPECT_EQ( l.value, 11u );
  EXPECT_EQ( l.node(), 5u );
  EXPECT_TRUE( l.complemented() );
  EXPECT_EQ( ( !l ).value, 10u );
  EXPECT_EQ( const0.value, 0u );
  EXPECT_EQ( const1.value, 1u );
}

TEST( aig_network, create_and_folds_and_hashes )
{
  aig_network net;
  auto a = net.create_pi( "a" );
  auto b = net.create_pi( "b" );
  EXPECT_EQ( net.create_and( a, const0 ), const0 );
  EXPECT_EQ( net.create_and( a, const1 ), a );
  EXPECT_EQ( net.create_and( a, a ), a );
  EXPECT_EQ( net.create_and( a, !a ), const0 );
  auto g = net.create_and( b, a );
  EXPECT_EQ( net.create_and( a, b ), g );
  EXPECT_EQ( net.num_ands(), 1u );
  EXPECT_EQ( net.fanin0( g.node() ), a );
  EXPECT_EQ( net.find_and( a, !b ), std::nullopt );
}

TEST( aig_network, interface_order_enforced )
{
  aig_network net;
  auto a = net.create_pi();
  net.create_and( a, net.create_pi() );
  EXPECT_THROW( net.create_pi(), network_error );
  EXPECT_THROW( net.create_latch(), network_error );
  EXPECT_THROW( net.create_po( literal{ 100, false } ), network_error );
}

TEST( strash, merges_duplicates )
{
  aig_network net;
  auto a = net.create_pi( "a" );
  auto b = net.create_pi( "b" );
  auto g = net.append_and_raw( a, b );
  auto h = net.append_and_raw( a, b );
  net.create_po( g, "f" );
  net.create_po( h, "g" );
  auto s = strash( net );
  EXPECT_EQ( s.num_ands(), 1u );
  EXPECT_EQ( s.po( 0 ).driver, s.po( 1 ).driver );
  EXPECT_EQ( test::po_truth_tables( net ), test::po_truth_tables( s ) );
}

TEST( strash, contradiction_becomes_constant )
{
  aig_network net;
  auto a = net.create_pi();
  net.create_po( net.append_and_raw( a, !a ) );
  auto s = strash( net );
  EXPECT_EQ( s.num_ands(), 0u );
  EXPECT_EQ( s.po( 0 ).driver, const0 );
}

TEST( strash, idempotent_and_sound_on_random_nets )
{
  for ( std::uint64_t seed = 0; seed < 200; ++seed )
  {
    auto net = test::random_aig( seed, { .num_pis = 10, .num_ands = 80, .num_pos = 5, .hashed = false } );
    auto s = strash( net );
    EXPECT_TRUE( is_hashed( s ) );
    EXPECT_LE( s.num_ands(), net.num_ands() );
    EXPECT_EQ( strash( s ), s );
    EXPECT_EQ( test::po_truth_tables( net ), test::po_truth_tables( s ) );
    EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( check_equiv( net, s ) ) );
  }
}

TEST( levels, examples )
{
  aig_network buf;
  buf.create_po( buf.create_pi() );
  EXPECT_EQ( depth( buf ), 0u );

  aig_network tree;
  std::vector<literal> x;
  for ( int i = 0; i < 4; ++i )
  {
    x.push_back( tree.create_pi() );
  }
  tree.create_po( tree.create_and( tree.create_and( x[0], x[1] ), tree.create_and( x[2], x[3] ) ) );
  EXPECT_EQ( depth( tree ), 2u );

  aig_network chain;
  for ( int i = 0; i < 4; ++i )
  {
    x[i] = chain.create_pi();
  }
  chain.create_po( chain.create_and( x[0], chain.create_and( x[1], chain.create_and( x[2], x[3] ) ) ) );
  EXPECT_EQ( depth( chain ), 3u );
}

TEST( levels, removing_unreferenced_node_never_increases_depth )
{
  std::mt19937_64 rng( 3 );
  for ( std::uint64_t seed = 0; seed < 100; ++seed )
  {
    auto net = test::random_aig( seed, { .num_pis = 6, .num_ands = 60, .num_pos = 6 } );
    auto const refs = reference_counts( net );
    auto const d = depth( net );
    /* drop one PO whose driver is an AND referenced only by that PO, then clean up */
    for ( std::uint32_t o = 0; o < net.num_pos(); ++o )
    {
      auto const n = net.po( o ).driver.node();
      if ( !net.is_and( n ) || refs[n] != 1 )
      {
        continue;
      }
      aig_network reduced;
      auto map = detail::copy_interface( net, reduced );
      net.foreach_and( [&]( auto id, auto const& g ) {
        if ( id != n )
        {
          map[id] = reduced.create_and( detail::map_literal( map, g.fanin0 ), detail::map_literal( map, g.fanin1 ) );
        }
      } );
      for ( std::uint32_t p = 0; p < net.num_pos(); ++p )
      {
        if ( p != o )
        {
          reduced.create_po( detail::map_literal( map, net.po( p ).driver ) );
        }
      }
      EXPECT_LE( depth( reduced ), d );
    }
  }
}

TEST( simulate, examples )
{
  aig_network net;
  auto a = net.create_pi();
  auto b = net.create_pi();
  net.create_po( net.create_and( a, b ) );
  auto out = simulate( net, { sim_vector::from_string( "1100" ), sim_vector::from_string( "1010" ) } );
  EXPECT_EQ( out[0].to_string(), "1000" );

  aig_network inv;
  inv.create_po( !inv.create_pi() );
  EXPECT_EQ( simulate( inv, { sim_vector::from_string( "10" ) } )[0].to_string(), "01" );

  EXPECT_THROW( simulate( net, { sim_vector( 4 ), sim_vector( 5 ) } ), std::invalid_argument );
  EXPECT_THROW( simulate( net, { sim_vector( 4 ) } ), std::invalid_argument );
}

TEST( simulate, matches_scalar_evaluation )
{
  std::mt19937_64 rng( 11 );
  for ( std::uint64_t seed = 0; seed < 100; ++seed )
  {
    auto net = test::random_aig( seed, { .num_pis = 12, .num_ands = 150, .num_pos = 8, .num_latches = 2 } );
    std::size_t const width = 100;
    std::vector<sim_vector> in;
    for ( std::uint32_t i = 0; i < net.num_pis() + net.num_latches(); ++i )
    {
      sim_vector v( width );
      for ( std::size_t b = 0; b < width; ++b )
      {
        v.set( b, rng() & 1u );
      }
      in.push_back( v );
    }
    auto out = simulate( net, in );
    for ( std::size_t b = 0; b < width; ++b )
    {
      std::vector<bool> pattern;
      for ( auto const& v : in )
      {
        pattern.push_back( v.get( b ) );
      }
      test::scalar_evaluator ev( net, pattern );
      for ( std::uint32_t o = 0; o < net.num_pos(); ++o )
      {
        ASSERT_EQ( out[o].get( b ), ev.lit( net.po( o ).driver ) );
      }
    }
    /* all-zero patterns */
    std::vector<sim_vector> zeros( in.size(), sim_vector( 1 ) );
    auto zout = simulate( net, zeros );
    test::scalar_evaluator ev( net, std::vector<bool>( in.size(), false ) );
    for ( std::uint32_t o = 0; o < net.num_pos(); ++o )
    {
      EXPECT_EQ( zout[o].get( 0 ), ev.lit( net.po( o ).driver ) );
    }
  }
}

TEST( sequential, combinational_net_unchanged )
{
  auto net = test::random_aig( 1, {} );
  auto [comb, shell] = extract_comb( net );
  EXPECT_EQ( comb, net );
  EXPECT_TRUE( shell.empty() );
}

TEST( sequential, toggle_latch )
{
  aig_network net;
  auto q = net.create_latch( latch_init::zero, "q" );
  net.set_latch_next( 0, !q );
  net.create_po( q, "out" );
  auto [comb, shell] = extract_comb( net );
  EXPECT_EQ( comb.num_latches(), 0u );
  EXPECT_EQ( comb.num_pis(), 1u );
  EXPECT_EQ( comb.num_pos(), 2u );
  EXPECT_EQ( comb.pi_name( 0 ), "__lat_out_0" );
  EXPECT_EQ( comb.po_name( 1 ), "__lat_in_0" );
  EXPECT_EQ( attach_shell( comb, shell ), net );
}

TEST( sequential, round_trip_with_latches )
{
  for ( std::uint64_t seed = 0; seed < 50; ++seed )
  {
    auto net = test::random_aig( seed, { .num_pis = 5, .num_ands = 40, .num_pos = 3, .num_latches = 3 } );
    auto [comb, shell] = extract_comb( net );
    ASSERT_EQ( shell.latches.size(), 3u );
    std::set<std::string> names;
    for ( std::uint32_t i = 0; i < comb.num_pis(); ++i )
    {
      names.insert( comb.pi_name( i ) );
    }
    for ( std::uint32_t i = 0; i < comb.num_pos(); ++i )
    {
      names.insert( comb.po_name( i ) );
    }
    EXPECT_EQ( names.size(), comb.num_pis() + comb.num_pos() );
    EXPECT_EQ( attach_shell( comb, shell ), net );
  }
}

TEST( sequential, attach_reports_missing_pseudo_objects )
{
  aig_network net;
  auto q = net.create_latch();
  net.set_latch_next( 0, q );
  auto [comb, shell] = extract_comb( net );
  comb.set_po_name( 0, "other" );
  EXPECT_THROW( attach_shell( comb, shell ), network_error );
}
