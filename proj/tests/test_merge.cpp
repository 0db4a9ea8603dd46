#include <aigpart/merge.hpp>
#include <aigpart/partition/pipeline.hpp>
#include <aigpart/strash.hpp>

#include <gtest/gtest.h>

#include "support/random_aig.hpp"
#include "support/structure.hpp"

#include <filesystem>

using namespace aigpart;

namespace
{

partitioned_network split( aig_network const& net, std::uint32_t max_size, std::uint32_t min_parts = 2 )
{
  partition_config cfg;
  cfg.max_part_size = max_size;
  cfg.min_parts = min_parts;
  return partition_network( net, cfg );
}

aig_network sequential_net( std::uint64_t seed, std::uint32_t latches )
{
  return test::random_aig( seed, { .num_pis = 10, .num_ands = 250, .num_pos = 8, .num_latches = latches, .window = 25 } );
}

} // namespace

TEST( merge, single_part_is_equivalent )
{
  auto const net = strash( test::random_aig( 1, { .num_pis = 6, .num_ands = 40, .num_pos = 3 } ) );
  auto const pn = cut_and_stitch( net, std::vector<std::uint32_t>( net.size(), 0 ) );
  auto const merged = merge( pn.manifest, pn.parts );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( verify_merge( net, merged ) ) );
  EXPECT_TRUE( test::structurally_isomorphic( merged, net ) );
}

TEST( merge, two_part_hand_example_restores_structure )
{
  aig_network net;
  auto a = net.create_pi( "a" ), b = net.create_pi( "b" ), c = net.create_pi( "c" ), d = net.create_pi( "d" );
  auto g = net.create_and( a, !b );
  auto h = net.create_and( g, c );
  auto j = net.create_and( !h, d );
  net.create_po( j, "f" );
  net.create_po( !g, "ng" );
  std::vector<std::uint32_t> assign( net.size(), 0 );
  assign[h.node()] = 1;
  assign[j.node()] = 1;
  auto const pn = cut_and_stitch( net, assign );
  ASSERT_EQ( pn.manifest.boundary_pairs.size(), 1u );
  auto const merged = merge( pn.manifest, pn.parts );
  EXPECT_TRUE( test::structurally_isomorphic( strash( net ), merged ) );
  EXPECT_EQ( merged.num_ands(), 3u );
}

TEST( merge, latches_restored_exactly )
{
  for ( std::uint64_t seed = 0; seed < 30; ++seed )
  {
    auto const net = sequential_net( seed, 3 );
    auto const pn = split( net, 60 );
    auto const merged = merge( pn.manifest, pn.parts );
    ASSERT_EQ( merged.num_latches(), 3u );
    for ( std::uint32_t k = 0; k < 3; ++k )
    {
      EXPECT_EQ( merged.latch_at( k ).init, net.latch_at( k ).init );
      EXPECT_EQ( merged.latch_at( k ).name, net.latch_at( k ).name );
    }
    EXPECT_FALSE( is_counter_example( verify_merge( net, merged ) ) ) << "seed " << seed;
  }
}

TEST( merge, round_trip_suite )
{
  for ( std::uint64_t seed = 0; seed < 200; ++seed )
  {
    auto const net = test::random_aig( seed, { .num_pis = 4 + static_cast<std::uint32_t>( seed % 20 ),
                                               .num_ands = 50 + static_cast<std::uint32_t>( seed * 29 % 900 ),
                                               .num_pos = 1 + static_cast<std::uint32_t>( seed % 17 ),
                                               .num_latches = static_cast<std::uint32_t>( seed % 3 ),
                                               .window = seed % 2 ? 20u : 0u } );
    auto const pn = split( net, 30 + static_cast<std::uint32_t>( seed % 5 ) * 40 );
    auto const merged = merge( pn.manifest, pn.parts );
    ASSERT_FALSE( is_counter_example( verify_merge( net, merged ) ) ) << "seed " << seed;
    EXPECT_EQ( merged.num_ands(), strash( net ).num_ands() ) << "seed " << seed;
    ASSERT_EQ( merged.num_pos(), net.num_pos() );
    for ( std::uint32_t o = 0; o < net.num_pos(); ++o )
    {
      EXPECT_EQ( merged.po( o ).name, net.po( o ).name );
    }
    EXPECT_TRUE( test::structurally_isomorphic( strash( net ), merged ) ) << "seed " << seed;
  }
}

TEST( merge, adders_survive_any_cap )
{
  for ( std::uint32_t bits = 2; bits <= 8; ++bits )
  {
    auto const net = strash( test::ripple_adder( bits ) );
    for ( std::uint32_t cap = 4; cap <= 40; cap += 6 )
    {
      auto const pn = split( net, cap );
      auto const merged = merge( pn.manifest, pn.parts );
      EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( verify_merge( net, merged ) ) ) << bits << " " << cap;
      EXPECT_EQ( test::po_truth_tables( merged ), test::po_truth_tables( net ) );
    }
  }
}

TEST( merge, corrupted_boundary_is_caught )
{
  auto const net = strash( test::ripple_adder( 8 ) );
  auto const pn0 = split( net, 12 );
  ASSERT_FALSE( pn0.manifest.boundary_pairs.empty() );
  for ( auto const& bp : pn0.manifest.boundary_pairs )
  {
    auto pn = pn0;
    auto& driver = pn.parts[bp.driver_part];
    driver.set_po_driver( bp.driver_po, !driver.po( bp.driver_po ).driver );
    auto const merged = merge( pn.manifest, pn.parts );
    EXPECT_TRUE( is_counter_example( verify_merge( net, merged ) ) ) << bp.wire;
  }
}

TEST( merge, malformed_inputs_are_rejected )
{
  auto const net = strash( test::random_aig( 78, { .num_pis = 10, .num_ands = 300, .num_pos = 6, .window = 15 } ) );
  auto const pn = split( net, 60 );
  ASSERT_FALSE( pn.manifest.boundary_pairs.empty() );

  auto missing = pn.manifest;
  missing.boundary_pairs.erase( missing.boundary_pairs.begin() );
  EXPECT_THROW( merge( missing, pn.parts ), merge_error );

  auto dangling = pn.manifest;
  dangling.boundary_pairs[0].wire = "__cut_nowhere";
  EXPECT_THROW( merge( dangling, pn.parts ), merge_error );

  auto renamed = pn.parts;
  renamed[0].set_pi_name( 0, "renamed" );
  EXPECT_THROW( merge( pn.manifest, renamed ), merge_error );

  auto fewer = pn.parts;
  fewer.pop_back();
  EXPECT_THROW( merge( pn.manifest, fewer ), merge_error );
}

TEST( merge, empty_network )
{
  aig_network empty;
  auto const pn = partition_network( empty );
  auto const merged = merge( pn.manifest, pn.parts );
  EXPECT_EQ( merged.num_ands(), 0u );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( verify_merge( empty, merged ) ) );
}

TEST( merge, reordered_part_interface_is_accepted )
{
  auto const net = strash( test::random_aig( 9, { .num_pis = 8, .num_ands = 200, .num_pos = 5, .window = 12 } ) );
  auto pn = split( net, 50 );
  /* rebuild part 0 with its inputs reversed */
  auto const& p0 = pn.parts[0];
  aig_network rev;
  std::vector<literal> map( p0.size(), const0 );
  std::vector<literal> pis( p0.num_pis() );
  for ( auto i = p0.num_pis(); i-- > 0; )
  {
    pis[i] = rev.create_pi( p0.pi_name( i ) );
  }
  for ( std::uint32_t i = 0; i < p0.num_pis(); ++i )
  {
    map[p0.pi_node( i )] = pis[i];
  }
  p0.foreach_and( [&]( auto id, auto const& g ) {
    map[id] = rev.create_and( map[g.fanin0.node()] ^ g.fanin0.complemented(), map[g.fanin1.node()] ^ g.fanin1.complemented() );
  } );
  for ( auto const& po : p0.pos() )
  {
    rev.create_po( map[po.driver.node()] ^ po.driver.complemented(), po.name );
  }
  pn.parts[0] = rev;
  EXPECT_FALSE( is_counter_example( verify_merge( net, merge( pn.manifest, pn.parts ) ) ) );
}

TEST( merge, run_directory_round_trip )
{
  auto const net = sequential_net( 4, 2 );
  auto const pn = split( net, 70 );
  auto const dir = std::filesystem::temp_directory_path() / "aigpart_merge_rundir";
  std::filesystem::remove_all( dir );
  write_partition( dir, pn );
  auto const back = read_partition( dir );
  EXPECT_EQ( back.manifest, pn.manifest );
  EXPECT_EQ( back.parts, pn.parts );
  EXPECT_FALSE( is_counter_example( verify_merge( net, merge( back.manifest, back.parts ) ) ) );
  std::filesystem::remove_all( dir );
}

TEST( verify, interface_mismatch_throws )
{
  aig_network a, b;
  a.create_po( a.create_pi( "x" ), "y" );
  b.create_pi( "x" );
  b.create_pi( "z" );
  b.create_po( const0, "y" );
  EXPECT_THROW( verify_merge( a, b ), interface_mismatch );
}
