// Writes the generated benchmark corpus as binary AIGER files.

#include "corpus.hpp"

#include <aigpart/io/aiger.hpp>
#include <aigpart/strash.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main( int argc, char** argv )
{
  CLI::App app{ "Generate the benchmark corpus" };
  std::string out = "corpus";
  bool list = false;
  app.add_option( "--out", out, "output directory" );
  app.add_flag( "--list", list, "print sizes without writing" );
  CLI11_PARSE( app, argc, argv );

  if ( !list )
  {
    std::filesystem::create_directories( out );
  }
  for ( auto const& e : aigpart::corpus::standard_corpus() )
  {
    auto const net = e.make();
    std::cout << e.name << " pis=" << net.num_pis() << " pos=" << net.num_pos() << " ands=" << net.num_ands()
              << " depth=" << aigpart::depth( net ) << "\n";
    if ( !list )
    {
      aigpart::write_aiger_file( ( std::filesystem::path( out ) / ( e.name + ".aig" ) ).string(), net );
    }
  }
  return 0;
}
