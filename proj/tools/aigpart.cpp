// aigpart: partition, optimize, merge, verify and report on AIGs.

#include <aigpart/aigpart.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace aigpart;

namespace
{

enum exit_code : int
{
  ok = 0,
  usage = 1,
  io = 2,
  verification = 3
};

struct global_options
{
  std::string config_path;
  std::uint64_t seed{ 1 };
  std::uint32_t max_size{ 10000 };
  std::uint32_t workers{ 1 };
  std::uint32_t episodes{ 200 };
  std::uint32_t length{ 10 };
  std::uint32_t min_parts{ 1 };
  std::string out;
};

struct flag_handles
{
  CLI::Option* seed{};
  CLI::Option* max_size{};
  CLI::Option* workers{};
  CLI::Option* episodes{};
  CLI::Option* length{};
  CLI::Option* min_parts{};
};

/* config file first, then whatever flags were given explicitly */
flow_config make_config( global_options const& g, flag_handles const& f )
{
  flow_config cfg;
  if ( !g.config_path.empty() )
  {
    nlohmann::json j;
    try
    {
      j = nlohmann::json::parse( read_file( g.config_path ) );
    }
    catch ( nlohmann::json::parse_error const& e )
    {
      throw config_error( "config '" + g.config_path + "': " + e.what() );
    }
    apply_config( cfg, j );
  }
  if ( f.seed->count() )
  {
    cfg.budget.seed = cfg.partition.seed = g.seed;
  }
  if ( f.max_size->count() )
  {
    cfg.partition.max_part_size = g.max_size;
  }
  if ( f.workers->count() )
  {
    cfg.workers = g.workers;
  }
  if ( f.episodes->count() )
  {
    cfg.budget.max_episodes = g.episodes;
  }
  if ( f.length->count() )
  {
    cfg.budget.episode_length = g.length;
  }
  if ( f.min_parts->count() )
  {
    cfg.partition.min_parts = g.min_parts;
  }
  cfg.partition.validate();
  cfg.budget.validate();
  cfg.policy.validate();
  return cfg;
}

int cmd_partition( std::string const& input, flow_config const& cfg, std::string const& out )
{
  auto const net = read_network( input );
  auto const dir = out.empty() ? fs::path( "run" ) : fs::path( out );
  auto const pn = partition_network( net, cfg.partition );
  write_partition( dir, pn );
  std::cout << "wrote " << pn.parts.size() << " parts with " << pn.manifest.boundary_pairs.size()
            << " boundary pairs to " << dir.string() << "\n";
  return ok;
}

int cmd_optimize( std::string const& rundir, flow_config const& cfg )
{
  auto const pn = read_partition( rundir );
  auto const results = run_parallel( pn.parts, cfg.budget, cfg.workers, cfg.policy );
  auto summary = nlohmann::ordered_json::array();
  for ( std::size_t p = 0; p < results.size(); ++p )
  {
    auto const& r = results[p];
    auto const stem = ( fs::path( rundir ) / ( "part_" + std::to_string( p ) ) ).string();
    write_aiger_file( stem + ".opt.aig", r.result.best );
    write_file( stem + ".flow", to_string( r.result.best_flow ) + "\n" );
    write_file( stem + ".trace.jsonl", traces_to_json_lines( r.result.traces ) );
    summary.push_back( { { "part", p },
                         { "initial_cost", r.result.initial_cost },
                         { "best_cost", r.result.best_cost },
                         { "flow", to_string( r.result.best_flow ) },
                         { "episodes", r.result.episodes },
                         { "budget_exhausted", r.result.budget_exhausted },
                         { "fallback", r.fallback },
                         { "error", r.error } } );
    std::cout << "part " << p << ": cost " << r.result.initial_cost << " -> " << r.result.best_cost
              << ( r.fallback ? " (fallback: " + r.error + ")" : "" ) << "\n";
  }
  write_file( ( fs::path( rundir ) / "optimize.json" ).string(), summary.dump( 2 ) + "\n" );
  return ok;
}

int cmd_merge( std::string const& rundir, std::string const& out )
{
  auto const opt_exists = fs::exists( fs::path( rundir ) / "part_0.opt.aig" );
  auto const pn = read_partition( rundir, opt_exists ? ".opt" : "" );
  auto const merged = merge( pn.manifest, pn.parts );
  auto const target = out.empty() ? ( fs::path( rundir ) / "merged.aig" ).string() : out;
  write_aiger_file( target, merged );
  std::cout << "merged " << pn.parts.size() << ( opt_exists ? " optimized" : "" ) << " parts into " << target << " ("
            << merged.num_ands() << " ANDs)\n";
  return ok;
}

int cmd_equiv( std::string const& a, std::string const& b, flow_config const& cfg )
{
  auto const verdict = check_equiv( read_network( a ), read_network( b ), cfg.equiv );
  std::cout << to_string( verdict ) << "\n";
  return is_counter_example( verdict ) ? verification : ok;
}

int cmd_report( std::string const& original, std::string const& optimized, std::string const& out )
{
  auto const net = read_network( original );
  auto const ours = read_network( optimized );
  qor_row row;
  row.name = fs::path( original ).stem().string();
  row.no_opt = qor( net );
  row.baseline = qor( baseline_script( net ) );
  row.ours = qor( ours );
  row.verified = !is_counter_example( check_equiv( net, ours ) );
  std::cout << format_table( { row } );
  if ( !out.empty() )
  {
    write_file( out, format_json( { row } ) );
  }
  return row.verified ? ok : verification;
}

int cmd_flow( std::string const& input, flow_config const& cfg, std::string const& out )
{
  auto const dir = out.empty() ? fs::path( "run" ) : fs::path( out );
  auto const res = flow_end_to_end( input, dir, cfg );
  std::cout << format_table( { res.row } );
  std::cout << "verification: " << to_string( res.verdict ) << "\n";
  return res.verified() ? ok : verification;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Partition-parallel AIG optimization" };
  app.require_subcommand( 1 );
  global_options g;
  flag_handles f;
  app.add_option( "--config", g.config_path, "JSON config file; explicit flags override it" );
  f.seed = app.add_option( "--seed", g.seed, "global random seed" );
  f.max_size = app.add_option( "--max-size", g.max_size, "maximum ANDs per part" );
  f.workers = app.add_option( "--workers", g.workers, "worker threads" );
  f.episodes = app.add_option( "--episodes", g.episodes, "episodes per part" );
  f.length = app.add_option( "--len", g.length, "actions per episode" );
  f.min_parts = app.add_option( "--min-parts", g.min_parts, "minimum number of parts" );
  app.add_option( "--out", g.out, "output directory or file" );
  app.fallthrough();

  std::string input, rundir, second;
  auto* partition = app.add_subcommand( "partition", "split a network into parts" );
  partition->add_option( "input", input, "AIGER or BLIF file" )->required();
  auto* optimize = app.add_subcommand( "optimize", "optimize every part of a run directory" );
  optimize->add_option( "rundir", rundir )->required();
  auto* merge_cmd = app.add_subcommand( "merge", "merge (optimized) parts back into one network" );
  merge_cmd->add_option( "rundir", rundir )->required();
  auto* equiv = app.add_subcommand( "equiv", "check two networks for equivalence" );
  equiv->add_option( "a", input )->required();
  equiv->add_option( "b", second )->required();
  auto* report = app.add_subcommand( "report", "QoR of an optimized network against the baseline script" );
  report->add_option( "original", input )->required();
  report->add_option( "optimized", second )->required();
  auto* flow_cmd = app.add_subcommand( "flow", "partition, optimize, merge, verify and report" );
  flow_cmd->add_option( "input", input )->required();
  for ( auto* sub : { partition, optimize, merge_cmd, equiv, report, flow_cmd } )
  {
    sub->fallthrough();
  }

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const rc = app.exit( e );
    return rc == 0 ? ok : usage;
  }

  try
  {
    auto const cfg = make_config( g, f );
    if ( partition->parsed() )
    {
      return cmd_partition( input, cfg, g.out );
    }
    if ( optimize->parsed() )
    {
      return cmd_optimize( rundir, cfg );
    }
    if ( merge_cmd->parsed() )
    {
      return cmd_merge( rundir, g.out );
    }
    if ( equiv->parsed() )
    {
      return cmd_equiv( input, second, cfg );
    }
    if ( report->parsed() )
    {
      return cmd_report( input, second, g.out );
    }
    return cmd_flow( input, cfg, g.out );
  }
  catch ( std::invalid_argument const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  catch ( optimizer_error const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return verification;
  }
  catch ( interface_mismatch const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return verification;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  }
}
