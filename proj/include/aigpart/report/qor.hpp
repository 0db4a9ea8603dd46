/*!
  \file qor.hpp
  \brief Area, delay and area-delay proxies and percent comparisons between networks.
*/

#pragma once

#include "../aig.hpp"
#include "../strash.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace aigpart
{

struct qor_report
{
  std::uint64_t area{ 0 };  /* AND count */
  std::uint64_t delay{ 0 }; /* logic depth */
  std::uint64_t adp{ 0 };   /* area * (delay + 1) */

  bool operator==( qor_report const& ) const = default;
};

inline qor_report qor( aig_network const& net )
{
  qor_report r;
  r.area = net.num_ands();
  r.delay = depth( net );
  r.adp = r.area * ( r.delay + 1 );
  return r;
}

/*! \brief Percent change (ours - baseline) / baseline * 100; empty when the baseline is zero. */
inline std::optional<double> percent_delta( double baseline, double ours )
{
  if ( baseline == 0.0 )
  {
    return std::nullopt;
  }
  return ( ours - baseline ) / baseline * 100.0;
}

/*! \brief Two decimals with a sign for negatives, "n/a" when undefined. */
inline std::string format_percent( std::optional<double> p )
{
  if ( !p )
  {
    return "n/a";
  }
  auto v = std::round( *p * 100.0 ) / 100.0;
  if ( v == 0.0 )
  {
    v = 0.0; /* no "-0.00%" */
  }
  char buf[32];
  std::snprintf( buf, sizeof( buf ), "%.2f%%", v );
  return buf;
}

struct qor_delta
{
  std::optional<double> area;
  std::optional<double> delay;
  std::optional<double> adp;
};

inline qor_delta compare( qor_report const& baseline, qor_report const& ours )
{
  return { percent_delta( static_cast<double>( baseline.area ), static_cast<double>( ours.area ) ),
           percent_delta( static_cast<double>( baseline.delay ), static_cast<double>( ours.delay ) ),
           percent_delta( static_cast<double>( baseline.adp ), static_cast<double>( ours.adp ) ) };
}

/*! \brief Percent change of the geometric mean of ours/baseline ratios; pairs with a zero entry are skipped. */
inline std::optional<double> geomean_delta( std::vector<std::pair<double, double>> const& baseline_ours )
{
  double log_sum = 0.0;
  std::size_t n = 0;
  for ( auto [b, o] : baseline_ours )
  {
    if ( b > 0.0 && o > 0.0 )
    {
      log_sum += std::log( o / b );
      ++n;
    }
  }
  if ( n == 0 )
  {
    return std::nullopt;
  }
  return ( std::exp( log_sum / static_cast<double>( n ) ) - 1.0 ) * 100.0;
}

/*! \brief One benchmark: the unoptimized network, the baseline script result and ours. */
struct qor_row
{
  std::string name;
  qor_report no_opt;
  qor_report baseline;
  qor_report ours;
  std::uint32_t parts{ 1 };
  std::uint32_t fallback_parts{ 0 }; /* parts whose optimization failed */
  bool verified{ false };
};

namespace detail
{

inline std::string pad( std::string s, std::size_t w )
{
  if ( s.size() < w )
  {
    s.insert( 0, w - s.size(), ' ' );
  }
  return s;
}

inline std::vector<std::pair<double, double>> column( std::vector<qor_row> const& rows, std::uint64_t qor_report::*m )
{
  std::vector<std::pair<double, double>> v;
  for ( auto const& r : rows )
  {
    v.emplace_back( static_cast<double>( r.baseline.*m ), static_cast<double>( r.ours.*m ) );
  }
  return v;
}

} // namespace detail

/*! \brief Fixed-width table: no-opt, baseline and ours per circuit with deltas against the
 *         baseline, plus geometric-mean rows when there is more than one circuit.
 */
inline std::string format_table( std::vector<qor_row> const& rows )
{
  static constexpr std::size_t widths[] = { 20, 9, 6, 9, 7, 11, 9, 9, 9 };
  std::string out;
  auto line = [&]( std::vector<std::string> const& cells ) {
    auto l = cells[0];
    l.resize( std::max( l.size(), widths[0] ), ' ' );
    for ( std::size_t i = 1; i < cells.size(); ++i )
    {
      l += ' ';
      l += i == 1 ? cells[i] + std::string( cells[i].size() < widths[i] ? widths[i] - cells[i].size() : 0, ' ' )
                  : detail::pad( cells[i], widths[i] );
    }
    while ( !l.empty() && l.back() == ' ' )
    {
      l.pop_back();
    }
    out += l + "\n";
  };
  line( { "circuit", "flow", "parts", "and", "depth", "adp", "d.area", "d.delay", "d.adp" } );
  for ( auto const& r : rows )
  {
    auto emit = [&]( std::string const& flow, qor_report const& q, std::string const& parts ) {
      auto const d = compare( r.baseline, q );
      line( { r.name, flow, parts, std::to_string( q.area ), std::to_string( q.delay ), std::to_string( q.adp ),
              format_percent( d.area ), format_percent( d.delay ), format_percent( d.adp ) } );
    };
    emit( "no-opt", r.no_opt, "" );
    emit( "baseline", r.baseline, "1" );
    emit( "ours", r.ours, std::to_string( r.parts ) );
  }
  if ( rows.size() > 1 )
  {
    auto agg = [&]( std::string const& flow, qor_report qor_row::*which ) {
      std::vector<std::string> cells{ "geomean", flow, "", "", "", "" };
      for ( auto m : { &qor_report::area, &qor_report::delay, &qor_report::adp } )
      {
        std::vector<std::pair<double, double>> v;
        for ( auto const& r : rows )
        {
          v.emplace_back( static_cast<double>( r.baseline.*m ), static_cast<double>( ( r.*which ).*m ) );
        }
        cells.push_back( format_percent( geomean_delta( v ) ) );
      }
      line( cells );
    };
    agg( "no-opt", &qor_row::no_opt );
    agg( "ours", &qor_row::ours );
  }
  return out;
}

inline nlohmann::ordered_json to_json( qor_report const& q )
{
  return { { "area", q.area }, { "delay", q.delay }, { "adp", q.adp } };
}

inline nlohmann::ordered_json delta_json( qor_delta const& d )
{
  return { { "area", format_percent( d.area ) }, { "delay", format_percent( d.delay ) }, { "adp", format_percent( d.adp ) } };
}

inline std::string format_json( std::vector<qor_row> const& rows )
{
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for ( auto const& r : rows )
  {
    nlohmann::ordered_json e;
    e["circuit"] = r.name;
    e["parts"] = r.parts;
    e["fallback_parts"] = r.fallback_parts;
    e["verified"] = r.verified;
    e["no_opt"] = to_json( r.no_opt );
    e["baseline"] = to_json( r.baseline );
    e["ours"] = to_json( r.ours );
    e["delta_vs_baseline"] = delta_json( compare( r.baseline, r.ours ) );
    e["no_opt_vs_baseline"] = delta_json( compare( r.baseline, r.no_opt ) );
    arr.push_back( std::move( e ) );
  }
  j["rows"] = std::move( arr );
  auto g = [&]( std::uint64_t qor_report::*m ) { return format_percent( geomean_delta( detail::column( rows, m ) ) ); };
  j["geomean_delta_vs_baseline"] = { { "area", g( &qor_report::area ) },
                                     { "delay", g( &qor_report::delay ) },
                                     { "adp", g( &qor_report::adp ) } };
  return j.dump( 2 ) + "\n";
}

} // namespace aigpart
