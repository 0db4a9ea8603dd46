/*!
  \file truth_table.hpp
  \brief Dynamic truth tables over at most 16 variables.
*/

#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aigpart
{

namespace detail
{

inline constexpr std::uint64_t var_masks[6] = { 0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
                                                0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

} // namespace detail

/*! \brief Truth table of a Boolean function; bit m holds f(m) with variable i = bit i of m. */
class truth_table
{
public:
  static constexpr std::uint32_t max_vars = 16;

  truth_table() : truth_table( 0 ) {}
  explicit truth_table( std::uint32_t num_vars ) : num_vars_( num_vars )
  {
    if ( num_vars > max_vars )
    {
      throw std::invalid_argument( "truth tables support at most 16 variables" );
    }
    words_.assign( num_vars <= 6 ? 1u : ( std::size_t{ 1 } << ( num_vars - 6 ) ), 0u );
  }

  static truth_table nth_var( std::uint32_t num_vars, std::uint32_t var )
  {
    truth_table t( num_vars );
    for ( std::size_t w = 0; w < t.words_.size(); ++w )
    {
      t.words_[w] = var < 6 ? detail::var_masks[var] : ( ( ( w >> ( var - 6 ) ) & 1u ) ? ~std::uint64_t{ 0 } : 0u );
    }
    t.mask();
    return t;
  }

  static truth_table constant( std::uint32_t num_vars, bool value )
  {
    truth_table t( num_vars );
    if ( value )
    {
      for ( auto& w : t.words_ )
      {
        w = ~std::uint64_t{ 0 };
      }
      t.mask();
    }
    return t;
  }

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_bits() const { return std::size_t{ 1 } << num_vars_; }
  std::vector<std::uint64_t>& words() { return words_; }
  std::vector<std::uint64_t> const& words() const { return words_; }

  bool get_bit( std::size_t m ) const { return ( words_[m >> 6] >> ( m & 63 ) ) & 1u; }
  void set_bit( std::size_t m, bool v )
  {
    auto const b = std::uint64_t{ 1 } << ( m & 63 );
    words_[m >> 6] = v ? ( words_[m >> 6] | b ) : ( words_[m >> 6] & ~b );
  }

  bool is_const0() const
  {
    for ( auto w : words_ )
    {
      if ( w )
      {
        return false;
      }
    }
    return true;
  }
  bool is_const1() const { return ( ~*this ).is_const0(); }

  std::size_t count_ones() const
  {
    std::size_t c = 0;
    for ( auto w : words_ )
    {
      c += static_cast<std::size_t>( std::popcount( w ) );
    }
    return c;
  }

  truth_table operator~() const
  {
    truth_table t( *this );
    for ( auto& w : t.words_ )
    {
      w = ~w;
    }
    t.mask();
    return t;
  }

  truth_table& operator&=( truth_table const& o )
  {
    for ( std::size_t i = 0; i < words_.size(); ++i )
    {
      words_[i] &= o.words_[i];
    }
    return *this;
  }
  truth_table& operator|=( truth_table const& o )
  {
    for ( std::size_t i = 0; i < words_.size(); ++i )
    {
      words_[i] |= o.words_[i];
    }
    return *this;
  }
  truth_table& operator^=( truth_table const& o )
  {
    for ( std::size_t i = 0; i < words_.size(); ++i )
    {
      words_[i] ^= o.words_[i];
    }
    return *this;
  }

  friend truth_table operator&( truth_table a, truth_table const& b ) { return a &= b; }
  friend truth_table operator|( truth_table a, truth_table const& b ) { return a |= b; }
  friend truth_table operator^( truth_table a, truth_table const& b ) { return a ^= b; }

  bool operator==( truth_table const& ) const = default;

  /*! \brief Negative cofactor, replicated into both halves so the table keeps its size. */
  truth_table cofactor0( std::uint32_t var ) const
  {
    truth_table t( *this );
    if ( var < 6 )
    {
      auto const shift = 1u << var;
      for ( auto& w : t.words_ )
      {
        auto const low = w & ~detail::var_masks[var];
        w = low | ( low << shift );
      }
      t.mask();
    }
    else
    {
      auto const stride = std::size_t{ 1 } << ( var - 6 );
      for ( std::size_t base = 0; base < t.words_.size(); base += 2 * stride )
      {
        for ( std::size_t i = 0; i < stride; ++i )
        {
          t.words_[base + stride + i] = t.words_[base + i];
        }
      }
    }
    return t;
  }

  truth_table cofactor1( std::uint32_t var ) const
  {
    truth_table t( *this );
    if ( var < 6 )
    {
      auto const shift = 1u << var;
      for ( auto& w : t.words_ )
      {
        auto const high = w & detail::var_masks[var];
        w = high | ( high >> shift );
      }
      t.mask();
    }
    else
    {
      auto const stride = std::size_t{ 1 } << ( var - 6 );
      for ( std::size_t base = 0; base < t.words_.size(); base += 2 * stride )
      {
        for ( std::size_t i = 0; i < stride; ++i )
        {
          t.words_[base + i] = t.words_[base + stride + i];
        }
      }
    }
    return t;
  }

  bool depends_on( std::uint32_t var ) const { return cofactor0( var ) != cofactor1( var ); }

private:
  void mask()
  {
    if ( num_vars_ < 6 )
    {
      words_[0] &= ( std::uint64_t{ 1 } << ( 1u << num_vars_ ) ) - 1;
    }
  }

  std::uint32_t num_vars_;
  std::vector<std::uint64_t> words_;
};

} // namespace aigpart
