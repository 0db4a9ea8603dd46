/*!
  \file aig.hpp
  \brief And-Inverter Graph data model.

  Node 0 is the constant, followed by primary inputs, then latch outputs,
  then AND nodes. AND nodes are always stored in topological order and
  with canonical fanin order (fanin0 <= fanin1).
*/

#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aigpart
{

/*! \brief Edge reference: 2 * node id + complement bit. */
struct literal
{
  std::uint32_t value{0};

  constexpr literal() = default;
  constexpr explicit literal( std::uint32_t v ) : value( v ) {}
  constexpr literal( std::uint32_t node, bool complemented ) : value( ( node << 1 ) | ( complemented ? 1u : 0u ) ) {}

  constexpr std::uint32_t node() const { return value >> 1; }
  constexpr bool complemented() const { return ( value & 1u ) != 0u; }
  constexpr bool is_constant() const { return value < 2u; }
  constexpr literal regular() const { return literal{ value & ~1u }; }

  constexpr literal operator!() const { return literal{ value ^ 1u }; }
  constexpr literal operator^( bool c ) const { return literal{ value ^ ( c ? 1u : 0u ) }; }

  constexpr auto operator<=>( literal const& ) const = default;
};

inline constexpr literal const0{ 0u };
inline constexpr literal const1{ 1u };

enum class latch_init : std::uint8_t
{
  zero,
  one,
  undefined
};

struct and_node
{
  literal fanin0;
  literal fanin1;

  bool operator==( and_node const& ) const = default;
};

struct output
{
  literal driver;
  std::string name;

  bool operator==( output const& ) const = default;
};

struct latch
{
  literal next;
  latch_init init{ latch_init::zero };
  std::string name;

  bool operator==( latch const& ) const = default;
};

/*! \brief Thrown when a network is used in a way that violates its structure. */
class network_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail
{

/* Hash table that is dropped on copy; it is rebuilt on the next lookup. */
class strash_table
{
public:
  strash_table() = default;
  strash_table( strash_table const& ) {}
  strash_table( strash_table&& ) noexcept = default;
  strash_table& operator=( strash_table const& )
  {
    map.clear();
    valid = false;
    return *this;
  }
  strash_table& operator=( strash_table&& ) noexcept = default;

  std::unordered_map<std::uint64_t, std::uint32_t> map;
  bool valid{ false };
};

inline std::uint64_t fanin_key( literal a, literal b )
{
  return ( std::uint64_t{ a.value } << 32 ) | b.value;
}

} // namespace detail

/*! \brief Combinational or sequential AIG stored as a dense, topologically ordered array. */
class aig_network
{
public:
  aig_network() = default;

  /* sizes */
  std::uint32_t size() const { return static_cast<std::uint32_t>( 1 + num_pis_ + latches_.size() + ands_.size() ); }
  std::uint32_t num_pis() const { return num_pis_; }
  std::uint32_t num_latches() const { return static_cast<std::uint32_t>( latches_.size() ); }
  std::uint32_t num_ands() const { return static_cast<std::uint32_t>( ands_.size() ); }
  std::uint32_t num_pos() const { return static_cast<std::uint32_t>( pos_.size() ); }

  /* node classification */
  bool is_constant( std::uint32_t id ) const { return id == 0; }
  bool is_pi( std::uint32_t id ) const { return id >= 1 && id <= num_pis_; }
  bool is_latch_output( std::uint32_t id ) const { return id > num_pis_ && id <= num_pis_ + num_latches(); }
  bool is_ci( std::uint32_t id ) const { return id >= 1 && id <= num_pis_ + num_latches(); }
  bool is_and( std::uint32_t id ) const { return id > num_pis_ + num_latches() && id < size(); }

  std::uint32_t first_and() const { return 1 + num_pis_ + num_latches(); }
  std::uint32_t pi_node( std::uint32_t index ) const { return 1 + index; }
  std::uint32_t latch_node( std::uint32_t index ) const { return 1 + num_pis_ + index; }

  literal fanin0( std::uint32_t id ) const { return ands_[id - first_and()].fanin0; }
  literal fanin1( std::uint32_t id ) const { return ands_[id - first_and()].fanin1; }
  and_node const& gate( std::uint32_t id ) const { return ands_[id - first_and()]; }
  std::vector<and_node> const& gates() const { return ands_; }

  std::vector<output> const& pos() const { return pos_; }
  output const& po( std::uint32_t index ) const { return pos_[index]; }
  std::vector<latch> const& latches() const { return latches_; }
  latch const& latch_at( std::uint32_t index ) const { return latches_[index]; }

  /* naming; unnamed interface objects get AIGER-style fallbacks */
  std::string const& pi_name_raw( std::uint32_t index ) const { return pi_names_[index]; }
  std::string pi_name( std::uint32_t index ) const
  {
    return pi_names_[index].empty() ? "i" + std::to_string( index ) : pi_names_[index];
  }
  std::string po_name( std::uint32_t index ) const
  {
    return pos_[index].name.empty() ? "o" + std::to_string( index ) : pos_[index].name;
  }
  std::string latch_name( std::uint32_t index ) const
  {
    return latches_[index].name.empty() ? "l" + std::to_string( index ) : latches_[index].name;
  }
  void set_pi_name( std::uint32_t index, std::string name ) { pi_names_[index] = std::move( name ); }
  void set_po_name( std::uint32_t index, std::string name ) { pos_[index].name = std::move( name ); }
  void set_latch_name( std::uint32_t index, std::string name ) { latches_[index].name = std::move( name ); }

  std::string const& name() const { return model_name_; }
  void set_name( std::string name ) { model_name_ = std::move( name ); }

  /* construction */
  literal create_pi( std::string name = {} )
  {
    if ( !latches_.empty() || !ands_.empty() )
    {
      throw network_error( "primary inputs must be created before latches and AND nodes" );
    }
    ++num_pis_;
    pi_names_.push_back( std::move( name ) );
    return literal{ num_pis_, false };
  }

  /*! \brief Creates a latch output; its next-state function is set later. */
  literal create_latch( latch_init init = latch_init::zero, std::string name = {} )
  {
    if ( !ands_.empty() )
    {
      throw network_error( "latches must be created before AND nodes" );
    }
    latches_.push_back( { const0, init, std::move( name ) } );
    return literal{ num_pis_ + num_latches(), false };
  }

  void set_latch_next( std::uint32_t index, literal next )
  {
    check_literal( next );
    latches_[index].next = next;
  }

  std::uint32_t create_po( literal driver, std::string name = {} )
  {
    check_literal( driver );
    pos_.push_back( { driver, std::move( name ) } );
    return num_pos() - 1;
  }

  void set_po_driver( std::uint32_t index, literal driver )
  {
    check_literal( driver );
    pos_[index].driver = driver;
  }

  /*! \brief Hashed AND creation with constant folding. */
  literal create_and( literal a, literal b )
  {
    if ( a.value > b.value )
    {
      std::swap( a, b );
    }
    if ( a == const0 || a == !b )
    {
      return const0;
    }
    if ( a == const1 || a == b )
    {
      return b;
    }
    ensure_hash();
    auto const key = detail::fanin_key( a, b );
    if ( auto it = hash_.map.find( key ); it != hash_.map.end() )
    {
      return literal{ it->second, false };
    }
    auto const id = append_and( a, b );
    hash_.map.emplace( key, id );
    return literal{ id, false };
  }

  /*! \brief Looks up an existing AND (or folded constant) without creating a node. */
  std::optional<literal> find_and( literal a, literal b )
  {
    if ( a.value > b.value )
    {
      std::swap( a, b );
    }
    if ( a == const0 || a == !b )
    {
      return const0;
    }
    if ( a == const1 || a == b )
    {
      return b;
    }
    ensure_hash();
    if ( auto it = hash_.map.find( detail::fanin_key( a, b ) ); it != hash_.map.end() )
    {
      return literal{ it->second, false };
    }
    return std::nullopt;
  }

  literal create_or( literal a, literal b ) { return !create_and( !a, !b ); }
  literal create_xor( literal a, literal b ) { return create_or( create_and( a, !b ), create_and( !a, b ) ); }
  literal create_mux( literal s, literal t, literal e ) { return create_or( create_and( s, t ), create_and( !s, e ) ); }

  /*! \brief Unhashed AND append; keeps the exact structure (used by readers). */
  literal append_and_raw( literal a, literal b )
  {
    if ( a.value > b.value )
    {
      std::swap( a, b );
    }
    auto const id = append_and( a, b );
    hash_.valid = false;
    return literal{ id, false };
  }

  void reserve_ands( std::size_t n ) { ands_.reserve( n ); }

  /* complete structural identity (names included) */
  bool operator==( aig_network const& other ) const
  {
    return num_pis_ == other.num_pis_ && ands_ == other.ands_ && pos_ == other.pos_ && latches_ == other.latches_ &&
           pi_names_ == other.pi_names_;
  }

  template<class Fn>
  void foreach_and( Fn&& fn ) const
  {
    auto id = first_and();
    for ( auto const& g : ands_ )
    {
      fn( id++, g );
    }
  }

private:
  std::uint32_t append_and( literal a, literal b )
  {
    check_literal( a );
    check_literal( b );
    ands_.push_back( { a, b } );
    return size() - 1;
  }

  void check_literal( literal l ) const
  {
    if ( l.node() >= size() )
    {
      throw network_error( "literal " + std::to_string( l.value ) + " refers to an undefined node" );
    }
  }

  void ensure_hash()
  {
    if ( hash_.valid )
    {
      return;
    }
    hash_.map.clear();
    hash_.map.reserve( ands_.size() );
    auto id = first_and();
    for ( auto const& g : ands_ )
    {
      hash_.map.emplace( detail::fanin_key( g.fanin0, g.fanin1 ), id++ );
    }
    hash_.valid = true;
  }

  std::uint32_t num_pis_{ 0 };
  std::vector<std::string> pi_names_;
  std::vector<latch> latches_;
  std::vector<and_node> ands_;
  std::vector<output> pos_;
  std::string model_name_;
  detail::strash_table hash_;
};

/*! \brief Fanout reference counts: AND fanins, PO drivers and latch next-states. */
inline std::vector<std::uint32_t> reference_counts( aig_network const& net )
{
  std::vector<std::uint32_t> refs( net.size(), 0u );
  for ( auto const& g : net.gates() )
  {
    ++refs[g.fanin0.node()];
    ++refs[g.fanin1.node()];
  }
  for ( auto const& po : net.pos() )
  {
    ++refs[po.driver.node()];
  }
  for ( auto const& l : net.latches() )
  {
    ++refs[l.next.node()];
  }
  return refs;
}

/*! \brief AND-node fanout lists (POs and latches not included). */
inline std::vector<std::vector<std::uint32_t>> fanout_lists( aig_network const& net )
{
  std::vector<std::vector<std::uint32_t>> fanouts( net.size() );
  net.foreach_and( [&]( auto id, auto const& g ) {
    fanouts[g.fanin0.node()].push_back( id );
    fanouts[g.fanin1.node()].push_back( id );
  } );
  return fanouts;
}

} // namespace aigpart
