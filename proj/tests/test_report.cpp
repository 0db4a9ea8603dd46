#include <aigpart/aigpart.hpp>

#include <gtest/gtest.h>

#include "support/random_aig.hpp"

#include <cmath>
#include <filesystem>

using namespace aigpart;

namespace
{

flow_config small_flow( std::uint32_t max_size, std::uint32_t episodes_per_part = 4 )
{
  flow_config cfg;
  cfg.partition.max_part_size = max_size;
  cfg.budget.max_episodes = episodes_per_part;
  cfg.budget.seed = 7;
  return cfg;
}

std::filesystem::path scratch_dir( std::string const& name )
{
  auto const dir = std::filesystem::temp_directory_path() / ( "aigpart_" + name );
  std::filesystem::remove_all( dir );
  return dir;
}

} // namespace

TEST( qor, formula_examples )
{
  aig_network buf;
  buf.create_po( buf.create_pi() );
  EXPECT_EQ( qor( buf ), ( qor_report{ 0, 0, 0 } ) );

  aig_network tree;
  auto a = tree.create_pi(), b = tree.create_pi(), c = tree.create_pi(), d = tree.create_pi();
  tree.create_po( tree.create_and( tree.create_and( a, b ), tree.create_and( c, d ) ) );
  auto const q = qor( tree );
  EXPECT_EQ( q.area, 3u );
  EXPECT_EQ( q.delay, 2u );
  EXPECT_EQ( q.adp, 9u );
}

TEST( qor, strash_never_grows_area_and_adp_is_exact )
{
  for ( std::uint64_t seed = 0; seed < 100; ++seed )
  {
    auto const net = test::random_aig( seed, { .num_pis = 8, .num_ands = 120, .num_pos = 5, .num_latches = static_cast<std::uint32_t>( seed % 3 ), .hashed = false } );
    auto const q = qor( net );
    EXPECT_LE( qor( strash( net ) ).area, q.area );
    EXPECT_EQ( q.adp, q.area * ( q.delay + 1 ) );
  }
}

TEST( compare, percent_formatting )
{
  qor_report base{ 100, 10, 100 };
  auto const same = compare( base, base );
  EXPECT_EQ( format_percent( same.area ), "0.00%" );
  EXPECT_EQ( format_percent( same.delay ), "0.00%" );
  EXPECT_EQ( format_percent( same.adp ), "0.00%" );
  EXPECT_EQ( format_percent( percent_delta( 100.0, 94.83 ) ), "-5.17%" );
  EXPECT_EQ( format_percent( percent_delta( 200.0, 201.0 ) ), "0.50%" );
  EXPECT_EQ( format_percent( percent_delta( 3.0, 3.0 - 1e-9 ) ), "0.00%" );
  EXPECT_EQ( format_percent( compare( qor_report{ 0, 0, 0 }, base ).adp ), "n/a" );
}

TEST( compare, geometric_mean_matches_direct_computation )
{
  std::vector<std::pair<double, double>> v{ { 100, 90 }, { 50, 55 }, { 8, 6 } };
  auto const direct = ( std::cbrt( 0.9 * 1.1 * 0.75 ) - 1.0 ) * 100.0;
  ASSERT_TRUE( geomean_delta( v ).has_value() );
  EXPECT_NEAR( *geomean_delta( v ), direct, 1e-12 );
  EXPECT_FALSE( geomean_delta( { { 0, 5 } } ).has_value() );
}

TEST( report, table_and_json_are_consistent )
{
  qor_row r1{ "c1", { 120, 12, 1560 }, { 100, 10, 1100 }, { 95, 10, 1045 }, 2, 0, true };
  qor_row r2{ "c2", { 50, 5, 300 }, { 40, 4, 200 }, { 42, 4, 210 }, 1, 0, true };
  auto const table = format_table( { r1, r2 } );
  EXPECT_NE( table.find( "no-opt" ), std::string::npos );
  EXPECT_NE( table.find( "-5.00%" ), std::string::npos );
  EXPECT_NE( table.find( "geomean" ), std::string::npos );
  auto const j = nlohmann::json::parse( format_json( { r1, r2 } ) );
  EXPECT_EQ( j["rows"][0]["delta_vs_baseline"]["adp"], "-5.00%" );
  EXPECT_EQ( j["rows"][1]["delta_vs_baseline"]["area"], "5.00%" );
  for ( auto const& row : j["rows"] )
  {
    for ( auto const* key : { "no_opt", "baseline", "ours" } )
    {
      auto const& q = row[key];
      EXPECT_EQ( q["adp"].get<std::uint64_t>(), q["area"].get<std::uint64_t>() * ( q["delay"].get<std::uint64_t>() + 1 ) );
    }
  }
  auto const g = ( std::sqrt( ( 1045.0 / 1100.0 ) * ( 210.0 / 200.0 ) ) - 1.0 ) * 100.0;
  EXPECT_EQ( j["geomean_delta_vs_baseline"]["adp"], format_percent( g ) );
}

TEST( flow, two_part_circuit_end_to_end )
{
  auto const net = strash( test::ripple_adder( 8 ) );
  auto const dir = scratch_dir( "flow_two" );
  auto cfg = small_flow( 30 );
  cfg.partition.min_parts = 2;
  auto const out = run_flow( net, "adder8", cfg, dir );
  EXPECT_GE( out.row.parts, 2u );
  EXPECT_TRUE( std::holds_alternative<equivalent_exhaustive>( out.verdict ) );
  EXPECT_TRUE( out.row.verified );
  for ( auto const* f : { "original.aig", "manifest.json", "part_0.aig", "part_0.opt.aig", "part_0.flow",
                          "part_0.trace.jsonl", "merged.aig", "baseline.aig", "verify.txt", "report.txt", "report.json" } )
  {
    EXPECT_TRUE( std::filesystem::exists( dir / f ) ) << f;
  }
  /* the persisted optimized parts merge back into the persisted merged network */
  auto const opt = read_partition( dir, ".opt" );
  EXPECT_EQ( merge( opt.manifest, opt.parts ), read_aiger_file( ( dir / "merged.aig" ).string() ) );
  /* the persisted flow reproduces the part's cost */
  auto const flow0 = parse_flow( read_file( ( dir / "part_0.flow" ).string() ) );
  EXPECT_EQ( flow_cost( apply_flow( strash( out.partitioned.parts[0] ), flow0 ) ), out.results[0].result.best_cost );
  std::filesystem::remove_all( dir );
}

TEST( flow, single_partition_is_plain_optimization )
{
  auto const net = strash( test::random_aig( 4, { .num_pis = 8, .num_ands = 80, .num_pos = 4, .window = 10 } ) );
  auto const cfg = small_flow( 10000 );
  auto const out = run_flow( net, "small", cfg );
  ASSERT_EQ( out.row.parts, 1u );
  auto b = cfg.budget;
  b.seed = part_seed( cfg.budget.seed, 0 );
  auto const direct = optimize_partition( out.partitioned.parts[0], b );
  EXPECT_EQ( out.row.ours.adp, qor( strash( direct.best ) ).adp );
  EXPECT_LE( out.row.ours.adp, out.row.no_opt.adp );
}

TEST( flow, sequential_circuit_keeps_latches )
{
  auto const net = test::random_aig( 9, { .num_pis = 6, .num_ands = 200, .num_pos = 4, .num_latches = 4, .window = 20 } );
  auto const out = run_flow( net, "seq", small_flow( 40 ) );
  EXPECT_EQ( out.merged.num_latches(), 4u );
  EXPECT_TRUE( out.verified() );
}

TEST( flow, reruns_are_byte_identical )
{
  auto const net = strash( test::random_aig( 17, { .num_pis = 12, .num_ands = 400, .num_pos = 10, .window = 30 } ) );
  auto const d1 = scratch_dir( "flow_rerun1" ), d2 = scratch_dir( "flow_rerun2" );
  auto cfg = small_flow( 100 );
  run_flow( net, "r", cfg, d1 );
  cfg.workers = 3;
  run_flow( net, "r", cfg, d2 );
  for ( auto const* f : { "report.txt", "report.json", "merged.aig", "manifest.json" } )
  {
    EXPECT_EQ( read_file( ( d1 / f ).string() ), read_file( ( d2 / f ).string() ) ) << f;
  }
  std::filesystem::remove_all( d1 );
  std::filesystem::remove_all( d2 );
}

TEST( flow, reads_blif_and_aiger_inputs )
{
  auto const dir = scratch_dir( "flow_inputs" );
  std::filesystem::create_directories( dir );
  write_file( ( dir / "x.blif" ).string(), ".model x\n.inputs a b c\n.outputs f\n.names a b c f\n11- 1\n-11 1\n.end\n" );
  auto const out = flow_end_to_end( ( dir / "x.blif" ).string(), dir / "run", small_flow( 100, 2 ) );
  EXPECT_EQ( out.row.name, "x" );
  EXPECT_TRUE( out.verified() );
  EXPECT_THROW( flow_end_to_end( ( dir / "missing.aig" ).string(), dir / "run2" ), io_error );
  std::filesystem::remove_all( dir );
}

TEST( config, json_overrides_and_rejects_unknown_keys )
{
  flow_config cfg;
  apply_config( cfg, nlohmann::json::parse( R"({"max_part_size": 500, "seed": 9, "episodes": 12, "workers": 3})" ) );
  EXPECT_EQ( cfg.partition.max_part_size, 500u );
  EXPECT_EQ( cfg.budget.seed, 9u );
  EXPECT_EQ( cfg.partition.seed, 9u );
  EXPECT_EQ( cfg.budget.max_episodes, 12u );
  EXPECT_EQ( cfg.workers, 3u );
  EXPECT_THROW( apply_config( cfg, nlohmann::json::parse( R"({"max_size": 5})" ) ), config_error );
  EXPECT_THROW( apply_config( cfg, nlohmann::json::parse( R"({"episodes": "many"})" ) ), config_error );
  EXPECT_THROW( apply_config( cfg, nlohmann::json::parse( R"({"episodes": 0})" ) ), std::invalid_argument );
}
