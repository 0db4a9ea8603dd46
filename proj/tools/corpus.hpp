#pragma once

// Generated benchmark circuits in the style of the EPFL arithmetic and
// random-control suites. All are combinational and a few hundred to ~40k ANDs.

#include <aigpart/aig.hpp>
#include <aigpart/strash.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace aigpart::corpus
{

using word = std::vector<literal>;

class builder
{
public:
  aig_network net;

  word inputs( std::string const& prefix, std::uint32_t bits )
  {
    word w;
    for ( std::uint32_t i = 0; i < bits; ++i )
    {
      w.push_back( net.create_pi( prefix + std::to_string( i ) ) );
    }
    return w;
  }

  void outputs( std::string const& prefix, word const& w )
  {
    for ( std::size_t i = 0; i < w.size(); ++i )
    {
      net.create_po( w[i], prefix + std::to_string( i ) );
    }
  }

  literal and_( literal a, literal b ) { return net.create_and( a, b ); }
  literal or_( literal a, literal b ) { return net.create_or( a, b ); }
  literal xor_( literal a, literal b ) { return net.create_xor( a, b ); }
  literal mux( literal s, literal t, literal e ) { return net.create_mux( s, t, e ); }
  literal maj( literal a, literal b, literal c ) { return or_( and_( a, b ), and_( c, or_( a, b ) ) ); }

  std::pair<literal, literal> full_add( literal a, literal b, literal c )
  {
    auto const p = xor_( a, b );
    return { xor_( p, c ), or_( and_( a, b ), and_( p, c ) ) };
  }

  /* a + b + cin, result has max(|a|, |b|) + 1 bits */
  word add( word a, word b, literal cin = const0 )
  {
    auto const n = std::max( a.size(), b.size() );
    a.resize( n, const0 );
    b.resize( n, const0 );
    word s;
    auto c = cin;
    for ( std::size_t i = 0; i < n; ++i )
    {
      auto [x, co] = full_add( a[i], b[i], c );
      s.push_back( x );
      c = co;
    }
    s.push_back( c );
    return s;
  }

  /* a - b as |a| bits plus a borrow-free flag (1 when a >= b) */
  std::pair<word, literal> sub( word const& a, word b )
  {
    b.resize( a.size(), const0 );
    for ( auto& x : b )
    {
      x = !x;
    }
    auto s = add( a, b, const1 );
    auto const ge = s.back();
    s.pop_back();
    return { s, ge };
  }

  word mux_word( literal s, word const& t, word const& e )
  {
    word r;
    for ( std::size_t i = 0; i < t.size(); ++i )
    {
      r.push_back( mux( s, t[i], e[i] ) );
    }
    return r;
  }

  /* unsigned a < b */
  literal less( word const& a, word const& b ) { return !sub( a, b ).second; }

  word multiply( word const& a, word const& b )
  {
    word acc( a.size() + b.size(), const0 );
    for ( std::size_t j = 0; j < b.size(); ++j )
    {
      word row( j, const0 );
      for ( auto x : a )
      {
        row.push_back( and_( x, b[j] ) );
      }
      acc = add( acc, row );
      acc.resize( a.size() + b.size() );
    }
    return acc;
  }

  literal reduce( word const& w, std::function<literal( literal, literal )> const& op, literal unit )
  {
    if ( w.empty() )
    {
      return unit;
    }
    auto level = w;
    while ( level.size() > 1 )
    {
      word next;
      for ( std::size_t i = 0; i + 1 < level.size(); i += 2 )
      {
        next.push_back( op( level[i], level[i + 1] ) );
      }
      if ( level.size() % 2 )
      {
        next.push_back( level.back() );
      }
      level = next;
    }
    return level[0];
  }

  /* number of set bits as a binary word */
  word popcount( word const& w )
  {
    std::vector<word> terms;
    for ( auto x : w )
    {
      terms.push_back( { x } );
    }
    while ( terms.size() > 1 )
    {
      std::vector<word> next;
      for ( std::size_t i = 0; i + 1 < terms.size(); i += 2 )
      {
        next.push_back( add( terms[i], terms[i + 1] ) );
      }
      if ( terms.size() % 2 )
      {
        next.push_back( terms.back() );
      }
      terms = next;
    }
    return terms.empty() ? word{ const0 } : terms[0];
  }

  aig_network finish( std::string const& name )
  {
    auto res = strash( net );
    res.set_name( name );
    return res;
  }
};

inline aig_network adder( std::uint32_t bits )
{
  builder b;
  auto const x = b.inputs( "a", bits ), y = b.inputs( "b", bits );
  b.outputs( "s", b.add( x, y ) );
  return b.finish( "adder" + std::to_string( bits ) );
}

inline aig_network multiplier( std::uint32_t bits )
{
  builder b;
  auto const x = b.inputs( "a", bits ), y = b.inputs( "b", bits );
  b.outputs( "p", b.multiply( x, y ) );
  return b.finish( "mult" + std::to_string( bits ) );
}

inline aig_network square( std::uint32_t bits )
{
  builder b;
  auto const x = b.inputs( "a", bits );
  b.outputs( "q", b.multiply( x, x ) );
  return b.finish( "square" + std::to_string( bits ) );
}

/* rotate-left by a log2(bits)-bit amount */
inline aig_network barrel_shifter( std::uint32_t log_bits )
{
  builder b;
  auto const n = 1u << log_bits;
  auto w = b.inputs( "d", n );
  auto const sh = b.inputs( "s", log_bits );
  for ( std::uint32_t k = 0; k < log_bits; ++k )
  {
    word rot( n );
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      rot[i] = w[( i + n - ( 1u << k ) ) % n];
    }
    w = b.mux_word( sh[k], rot, w );
  }
  b.outputs( "q", w );
  return b.finish( "bar" + std::to_string( n ) );
}

/* maximum of `count` unsigned words */
inline aig_network maximum( std::uint32_t count, std::uint32_t bits )
{
  builder b;
  std::vector<word> ws;
  for ( std::uint32_t i = 0; i < count; ++i )
  {
    ws.push_back( b.inputs( "x" + std::to_string( i ) + "_", bits ) );
  }
  auto best = ws[0];
  for ( std::uint32_t i = 1; i < count; ++i )
  {
    best = b.mux_word( b.less( best, ws[i] ), ws[i], best );
  }
  b.outputs( "m", best );
  return b.finish( "max" + std::to_string( count ) + "x" + std::to_string( bits ) );
}

/* restoring division: quotient and remainder */
inline aig_network divider( std::uint32_t bits )
{
  builder b;
  auto const n = b.inputs( "n", bits ), d = b.inputs( "d", bits );
  word rem( bits + 1, const0 ), q( bits, const0 );
  for ( auto i = bits; i-- > 0; )
  {
    rem.insert( rem.begin(), n[i] );
    rem.pop_back();
    auto [diff, ge] = b.sub( rem, d );
    q[i] = ge;
    rem = b.mux_word( ge, diff, rem );
  }
  rem.pop_back();
  b.outputs( "q", q );
  b.outputs( "r", rem );
  return b.finish( "div" + std::to_string( bits ) );
}

/* restoring integer square root of a 2*bits-bit radicand */
inline aig_network square_root( std::uint32_t bits )
{
  builder b;
  auto const x = b.inputs( "x", 2 * bits );
  word root;
  word rem( bits + 3, const0 );
  for ( auto i = bits; i-- > 0; )
  {
    /* rem = rem << 2 | next two bits; trial = root << 2 | 01 */
    rem.insert( rem.begin(), { x[2 * i], x[2 * i + 1] } );
    rem.resize( bits + 3 );
    word trial{ const1, const0 };
    trial.insert( trial.end(), root.begin(), root.end() );
    trial.resize( bits + 3, const0 );
    auto [diff, ge] = b.sub( rem, trial );
    rem = b.mux_word( ge, diff, rem );
    root.insert( root.begin(), ge );
  }
  b.outputs( "r", root );
  return b.finish( "sqrt" + std::to_string( 2 * bits ) );
}

inline aig_network priority_encoder( std::uint32_t bits )
{
  builder b;
  auto const r = b.inputs( "r", bits );
  std::uint32_t log = 0;
  while ( ( 1u << log ) < bits )
  {
    ++log;
  }
  word index( log, const0 );
  auto any = const0;
  for ( auto i = bits; i-- > 0; )
  {
    /* lower indices win: scan from the top and let later requests override */
    for ( std::uint32_t k = 0; k < log; ++k )
    {
      index[k] = b.mux( r[i], ( ( i >> k ) & 1u ) ? const1 : const0, index[k] );
    }
    any = b.or_( any, r[i] );
  }
  b.outputs( "i", index );
  b.net.create_po( any, "valid" );
  return b.finish( "priority" + std::to_string( bits ) );
}

inline aig_network decoder( std::uint32_t log_bits )
{
  builder b;
  auto const s = b.inputs( "s", log_bits );
  word out;
  for ( std::uint32_t v = 0; v < ( 1u << log_bits ); ++v )
  {
    word lits;
    for ( std::uint32_t k = 0; k < log_bits; ++k )
    {
      lits.push_back( ( ( v >> k ) & 1u ) ? s[k] : !s[k] );
    }
    out.push_back( b.reduce( lits, [&]( literal x, literal y ) { return b.and_( x, y ); }, const1 ) );
  }
  b.outputs( "d", out );
  return b.finish( "dec" + std::to_string( log_bits ) );
}

/* round-robin arbiter: grant the first request at or after the pointer */
inline aig_network arbiter( std::uint32_t n )
{
  builder b;
  auto const req = b.inputs( "req", n ), ptr = b.inputs( "ptr", n );
  word grant( n, const0 );
  /* two passes of a thermometer-masked priority chain */
  auto taken = const0;
  word mask( n, const0 );
  auto seen = const0;
  for ( std::uint32_t i = 0; i < n; ++i )
  {
    seen = b.or_( seen, ptr[i] );
    mask[i] = seen;
  }
  for ( std::uint32_t pass = 0; pass < 2; ++pass )
  {
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      auto const eligible = pass == 0 ? b.and_( req[i], mask[i] ) : req[i];
      auto const g = b.and_( eligible, !taken );
      grant[i] = b.or_( grant[i], g );
      taken = b.or_( taken, g );
    }
  }
  b.outputs( "g", grant );
  return b.finish( "arbiter" + std::to_string( n ) );
}

inline aig_network voter( std::uint32_t n )
{
  builder b;
  auto const v = b.inputs( "v", n );
  auto const count = b.popcount( v );
  /* majority: count > n / 2 */
  word half;
  for ( std::uint32_t k = 0; k < count.size(); ++k )
  {
    half.push_back( ( ( ( n / 2 ) >> k ) & 1u ) ? const1 : const0 );
  }
  b.net.create_po( b.less( half, count ), "maj" );
  return b.finish( "voter" + std::to_string( n ) );
}

inline aig_network parity( std::uint32_t n )
{
  builder b;
  auto const v = b.inputs( "v", n );
  b.net.create_po( b.reduce( v, [&]( literal x, literal y ) { return b.xor_( x, y ); }, const0 ), "p" );
  return b.finish( "parity" + std::to_string( n ) );
}

/* add, sub, and, or, xor, set-less-than selected by a 3-bit opcode */
inline aig_network alu( std::uint32_t bits )
{
  builder b;
  auto const x = b.inputs( "a", bits ), y = b.inputs( "b", bits ), op = b.inputs( "op", 3 );
  auto sum = b.add( x, y );
  sum.resize( bits );
  auto const [diff, ge] = b.sub( x, y );
  word land, lor, lxor, slt( bits, const0 );
  for ( std::uint32_t i = 0; i < bits; ++i )
  {
    land.push_back( b.and_( x[i], y[i] ) );
    lor.push_back( b.or_( x[i], y[i] ) );
    lxor.push_back( b.xor_( x[i], y[i] ) );
  }
  slt[0] = !ge;
  auto const lo = b.mux_word( op[0], diff, sum );
  auto const mid = b.mux_word( op[0], lor, land );
  auto const hi = b.mux_word( op[0], slt, lxor );
  auto const r = b.mux_word( op[2], hi, b.mux_word( op[1], mid, lo ) );
  b.outputs( "r", r );
  b.net.create_po( b.reduce( r, [&]( literal p, literal q ) { return b.or_( p, q ); }, const0 ), "nz" );
  return b.finish( "alu" + std::to_string( bits ) );
}

/* unsigned int to a float-like (exponent, mantissa) pair with leading-one normalization */
inline aig_network int_to_float( std::uint32_t bits, std::uint32_t mantissa )
{
  builder b;
  auto w = b.inputs( "x", bits );
  std::uint32_t log = 0;
  while ( ( 1u << log ) < bits )
  {
    ++log;
  }
  word exp( log, const0 );
  for ( auto k = log; k-- > 0; )
  {
    auto const sh = 1u << k;
    word top( w.end() - sh, w.end() );
    auto const zero = !b.reduce( top, [&]( literal p, literal q ) { return b.or_( p, q ); }, const0 );
    word shifted( sh, const0 );
    shifted.insert( shifted.end(), w.begin(), w.end() - sh );
    w = b.mux_word( zero, shifted, w );
    exp[k] = !zero;
  }
  b.outputs( "e", exp );
  b.outputs( "m", word( w.end() - mantissa, w.end() ) );
  return b.finish( "int2float" + std::to_string( bits ) );
}

/* Random control logic: layered sum-of-products over nearby signals, like
   cavlc, i2c or mem_ctrl. `locality` bounds how far back a product reaches. */
inline aig_network random_control( std::string const& name, std::uint64_t seed, std::uint32_t num_pis,
                                   std::uint32_t num_signals, std::uint32_t num_pos, std::uint32_t locality )
{
  std::mt19937_64 rng( seed );
  builder b;
  auto sig = b.inputs( "pi", num_pis );
  for ( std::uint32_t s = 0; s < num_signals; ++s )
  {
    auto const lo = sig.size() > locality ? sig.size() - locality : 0;
    auto pick = [&]() {
      auto const i = lo + rng() % ( sig.size() - lo );
      return sig[i] ^ ( rng() % 2 == 0 );
    };
    auto const products = 1 + rng() % 3;
    word terms;
    for ( std::uint64_t p = 0; p < products; ++p )
    {
      auto const width = 2 + rng() % 3;
      word lits;
      for ( std::uint64_t k = 0; k < width; ++k )
      {
        lits.push_back( pick() );
      }
      terms.push_back( b.reduce( lits, [&]( literal x, literal y ) { return b.and_( x, y ); }, const1 ) );
    }
    auto f = b.reduce( terms, [&]( literal x, literal y ) { return b.or_( x, y ); }, const0 );
    if ( rng() % 4 == 0 )
    {
      f = b.xor_( f, pick() );
    }
    sig.push_back( f );
  }
  for ( std::uint32_t o = 0; o < num_pos; ++o )
  {
    b.net.create_po( sig[sig.size() - 1 - ( o * 7919u ) % std::min<std::size_t>( sig.size() - num_pis, 4 * num_pos )],
                     "po" + std::to_string( o ) );
  }
  return b.finish( name );
}

struct entry
{
  std::string name;
  std::function<aig_network()> make;
};

/* the standard corpus, smallest first */
inline std::vector<entry> standard_corpus()
{
  return {
      { "adder64", [] { return adder( 64 ); } },
      { "parity256", [] { return parity( 256 ); } },
      { "dec8", [] { return decoder( 8 ); } },
      { "priority128", [] { return priority_encoder( 128 ); } },
      { "int2float32", [] { return int_to_float( 32, 12 ); } },
      { "cavlc", [] { return random_control( "cavlc", 11, 10, 350, 11, 40 ); } },
      { "alu32", [] { return alu( 32 ); } },
      { "arbiter128", [] { return arbiter( 128 ); } },
      { "bar64", [] { return barrel_shifter( 6 ); } },
      { "max4x64", [] { return maximum( 4, 64 ); } },
      { "i2c", [] { return random_control( "i2c", 23, 147, 900, 142, 60 ); } },
      { "voter255", [] { return voter( 255 ); } },
      { "mult16", [] { return multiplier( 16 ); } },
      { "router", [] { return random_control( "router", 37, 60, 1600, 30, 120 ); } },
      { "sqrt32", [] { return square_root( 16 ); } },
      { "div16", [] { return divider( 16 ); } },
      { "square24", [] { return square( 24 ); } },
      { "mult32", [] { return multiplier( 32 ); } },
      { "mem_ctrl", [] { return random_control( "mem_ctrl", 41, 512, 6000, 400, 300 ); } },
      { "div32", [] { return divider( 32 ); } },
      { "mult64", [] { return multiplier( 64 ); } },
  };
}

} // namespace aigpart::corpus
