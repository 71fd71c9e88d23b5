/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file circuit.hpp
  \brief Gate-level IR, cost accounting, rewrites and classical simulation

  Line 0 is the least significant bit of the first register. A circuit may
  carry an output relabeling `p`; the value read at output position `j` is
  the value of physical line `p[j]` after the last gate.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revmod
{

enum class line_role : uint8_t
{
  data,
  ancilla,
  control,
  swap,
  garbage
};

inline char role_char( line_role r )
{
  switch ( r )
  {
  case line_role::data:
    return 'd';
  case line_role::ancilla:
    return 'a';
  case line_role::control:
    return 'c';
  case line_role::swap:
    return 's';
  case line_role::garbage:
    return 'g';
  }
  return '?';
}

inline line_role role_from_char( char ch )
{
  switch ( ch )
  {
  case 'd':
    return line_role::data;
  case 'a':
    return line_role::ancilla;
  case 'c':
    return line_role::control;
  case 's':
    return line_role::swap;
  case 'g':
    return line_role::garbage;
  }
  throw std::invalid_argument( std::string( "unknown line role '" ) + ch + "'" );
}

/*! \brief Lines that must enter the circuit as 0. */
inline bool starts_zero( line_role r )
{
  return r == line_role::ancilla || r == line_role::garbage || r == line_role::swap;
}

struct control
{
  uint32_t line = 0;
  bool positive = true;

  bool operator==( const control& ) const = default;
};

inline control pos( uint32_t line ) { return { line, true }; }
inline control neg( uint32_t line ) { return { line, false }; }

enum class gate_kind : uint8_t
{
  not_gate,
  cnot,
  toffoli,
  swap,
  fredkin
};

struct gate
{
  gate_kind kind = gate_kind::not_gate;
  std::vector<control> controls;
  uint32_t target = 0;
  uint32_t target2 = 0;
  /* Fredkin only: `target2` is known to carry 0, so one CNOT suffices */
  bool zero_input = false;

  bool operator==( const gate& ) const = default;

  /*! \brief Multiple-controlled NOT; the kind follows the control count. */
  static gate mcx( std::vector<control> controls, uint32_t target )
  {
    gate g;
    g.kind = controls.empty() ? gate_kind::not_gate : controls.size() == 1 ? gate_kind::cnot : gate_kind::toffoli;
    g.controls = std::move( controls );
    g.target = target;
    return g;
  }

  static gate swap( uint32_t a, uint32_t b )
  {
    gate g;
    g.kind = gate_kind::swap;
    g.target = a;
    g.target2 = b;
    return g;
  }

  static gate fredkin( control c, uint32_t a, uint32_t b, bool zero_input = false )
  {
    gate g;
    g.kind = gate_kind::fredkin;
    g.controls = { c };
    g.target = a;
    g.target2 = b;
    g.zero_input = zero_input;
    return g;
  }

  bool is_swap_like() const { return kind == gate_kind::swap || kind == gate_kind::fredkin; }

  template<typename Fn>
  void foreach_line( Fn&& fn ) const
  {
    for ( auto const& c : controls )
      fn( c.line );
    fn( target );
    if ( is_swap_like() )
      fn( target2 );
  }
};

struct gate_counts
{
  uint64_t toffoli = 0;
  uint64_t cnot = 0;
  uint64_t nots = 0;
  uint64_t ancillae = 0;

  bool operator==( const gate_counts& ) const = default;
};

/*! \brief Toffoli cost of one gate, expanding k controls into 2k-3 Toffolis. */
inline gate_counts gate_cost( const gate& g )
{
  gate_counts r;
  switch ( g.kind )
  {
  case gate_kind::not_gate:
    r.nots = 1;
    break;
  case gate_kind::cnot:
    r.cnot = 1;
    break;
  case gate_kind::toffoli:
    r.toffoli = 2 * g.controls.size() - 3;
    break;
  case gate_kind::swap:
    r.cnot = 3;
    break;
  case gate_kind::fredkin:
    r.toffoli = 1;
    r.cnot = g.zero_input ? 1 : 2;
    break;
  }
  return r;
}

class circuit
{
public:
  circuit() = default;

  explicit circuit( std::vector<line_role> roles )
      : roles_( std::move( roles ) ), relabel_( roles_.size() )
  {
    std::iota( relabel_.begin(), relabel_.end(), 0u );
  }

  uint32_t width() const { return static_cast<uint32_t>( roles_.size() ); }
  const std::vector<line_role>& roles() const { return roles_; }
  line_role role( uint32_t line ) const { return roles_.at( line ); }
  void set_role( uint32_t line, line_role r ) { roles_.at( line ) = r; }
  const std::vector<gate>& gates() const { return gates_; }
  size_t num_gates() const { return gates_.size(); }

  const std::vector<uint32_t>& relabel() const { return relabel_; }

  bool has_relabel() const
  {
    for ( uint32_t i = 0; i < relabel_.size(); ++i )
      if ( relabel_[i] != i )
        return true;
    return false;
  }

  void set_relabel( std::vector<uint32_t> p )
  {
    if ( p.size() != width() )
      throw std::invalid_argument( "relabeling size differs from circuit width" );
    std::vector<bool> seen( p.size() );
    for ( auto v : p )
    {
      if ( v >= p.size() || seen[v] )
        throw std::invalid_argument( "relabeling is not a permutation" );
      seen[v] = true;
    }
    relabel_ = std::move( p );
  }

  uint32_t add_line( line_role r )
  {
    roles_.push_back( r );
    relabel_.push_back( width() - 1 );
    return width() - 1;
  }

  /*! \brief Physical line currently holding output position `pos`. */
  uint32_t line_at( uint32_t pos ) const { return relabel_.at( pos ); }

  /*! \brief Appends a gate over physical lines. */
  void add_gate( gate g )
  {
    validate( g );
    gates_.push_back( std::move( g ) );
  }

  /*! \brief Appends a gate whose lines are output positions. */
  void emit( gate g )
  {
    for ( auto& c : g.controls )
      c.line = line_at( c.line );
    g.target = line_at( g.target );
    if ( g.is_swap_like() )
      g.target2 = line_at( g.target2 );
    add_gate( std::move( g ) );
  }

  void x( uint32_t t ) { emit( gate::mcx( {}, t ) ); }
  void cx( control c, uint32_t t ) { emit( gate::mcx( { c }, t ) ); }
  void ccx( control a, control b, uint32_t t ) { emit( gate::mcx( { a, b }, t ) ); }
  void mcx( std::vector<control> cs, uint32_t t ) { emit( gate::mcx( std::move( cs ), t ) ); }

  /*! \brief Exchanges two output positions without gates. */
  void swap_positions( uint32_t a, uint32_t b ) { std::swap( relabel_.at( a ), relabel_.at( b ) ); }

  void clear_gates() { gates_.clear(); }

private:
  void validate( const gate& g ) const
  {
    std::vector<uint32_t> used;
    g.foreach_line( [&]( uint32_t l ) { used.push_back( l ); } );
    for ( auto l : used )
      if ( l >= width() )
        throw std::out_of_range( "gate references line " + std::to_string( l ) + " beyond width " + std::to_string( width() ) );
    std::sort( used.begin(), used.end() );
    if ( std::adjacent_find( used.begin(), used.end() ) != used.end() )
      throw std::invalid_argument( "gate lines are not pairwise distinct" );
    switch ( g.kind )
    {
    case gate_kind::not_gate:
      if ( !g.controls.empty() )
        throw std::invalid_argument( "NOT gate with controls" );
      break;
    case gate_kind::cnot:
      if ( g.controls.size() != 1 )
        throw std::invalid_argument( "CNOT needs exactly one control" );
      break;
    case gate_kind::toffoli:
      if ( g.controls.size() < 2 )
        throw std::invalid_argument( "Toffoli needs at least two controls" );
      break;
    case gate_kind::swap:
      if ( !g.controls.empty() )
        throw std::invalid_argument( "SWAP with controls" );
      break;
    case gate_kind::fredkin:
      if ( g.controls.size() != 1 )
        throw std::invalid_argument( "Fredkin needs exactly one control" );
      break;
    }
  }

  std::vector<line_role> roles_;
  std::vector<gate> gates_;
  std::vector<uint32_t> relabel_;
};

/*! \brief Sums gate costs; ancillae are the zero-initialized helper lines. */
inline gate_counts counts( const circuit& c )
{
  gate_counts r;
  for ( auto const& g : c.gates() )
  {
    auto k = gate_cost( g );
    r.toffoli += k.toffoli;
    r.cnot += k.cnot;
    r.nots += k.nots;
  }
  for ( auto role : c.roles() )
    if ( starts_zero( role ) )
      ++r.ancillae;
  return r;
}

/* simulation */

/*! \brief One 64-bit word per line; bit `j` belongs to input pattern `j`. */
using lanes = std::vector<uint64_t>;

inline void apply_gate( const gate& g, uint64_t* s )
{
  uint64_t m = ~uint64_t{ 0 };
  for ( auto const& c : g.controls )
    m &= c.positive ? s[c.line] : ~s[c.line];
  if ( g.is_swap_like() )
  {
    uint64_t d = ( s[g.target] ^ s[g.target2] ) & m;
    s[g.target] ^= d;
    s[g.target2] ^= d;
  }
  else
  {
    s[g.target] ^= m;
  }
}

/*! \brief Bit-sliced simulation of 64 patterns at once. */
inline lanes simulate_lanes( const circuit& c, lanes s )
{
  if ( s.size() != c.width() )
    throw std::invalid_argument( "input width " + std::to_string( s.size() ) + " differs from circuit width " + std::to_string( c.width() ) );
  for ( auto const& g : c.gates() )
    apply_gate( g, s.data() );
  lanes out( s.size() );
  for ( uint32_t j = 0; j < s.size(); ++j )
    out[j] = s[c.relabel()[j]];
  return out;
}

inline std::vector<bool> simulate( const circuit& c, const std::vector<bool>& input )
{
  if ( input.size() != c.width() )
    throw std::invalid_argument( "input width " + std::to_string( input.size() ) + " differs from circuit width " + std::to_string( c.width() ) );
  lanes s( input.size() );
  for ( size_t i = 0; i < input.size(); ++i )
    s[i] = input[i] ? 1u : 0u;
  s = simulate_lanes( c, std::move( s ) );
  std::vector<bool> out( s.size() );
  for ( size_t i = 0; i < s.size(); ++i )
    out[i] = s[i] & 1u;
  return out;
}

/*! \brief Simulates one pattern packed in a word (bit i is line i). */
inline uint64_t simulate_word( const circuit& c, uint64_t input )
{
  if ( c.width() > 64 )
    throw std::invalid_argument( "simulate_word needs width <= 64" );
  lanes s( c.width() );
  for ( uint32_t i = 0; i < c.width(); ++i )
    s[i] = ( input >> i ) & 1u;
  s = simulate_lanes( c, std::move( s ) );
  uint64_t r = 0;
  for ( uint32_t i = 0; i < c.width(); ++i )
    r |= ( s[i] & 1u ) << i;
  return r;
}

/*! \brief Writes `value` onto `lines` for pattern `lane`. */
inline void load_register( lanes& s, std::span<const uint32_t> lines, unsigned lane, uint64_t value )
{
  for ( size_t i = 0; i < lines.size(); ++i )
  {
    uint64_t bit = uint64_t{ 1 } << lane;
    if ( ( value >> i ) & 1u )
      s[lines[i]] |= bit;
    else
      s[lines[i]] &= ~bit;
  }
}

inline uint64_t read_register( const lanes& s, std::span<const uint32_t> lines, unsigned lane )
{
  uint64_t r = 0;
  for ( size_t i = 0; i < lines.size(); ++i )
    r |= ( ( s[lines[i]] >> lane ) & 1u ) << i;
  return r;
}

/* structural transforms */

/*! \brief Reverses the circuit; all gate kinds are self-inverse. */
inline circuit inverse( const circuit& c )
{
  const auto& p = c.relabel();
  std::vector<uint32_t> pinv( p.size() );
  for ( uint32_t j = 0; j < p.size(); ++j )
    pinv[p[j]] = j;

  circuit r( c.roles() );
  for ( auto it = c.gates().rbegin(); it != c.gates().rend(); ++it )
  {
    gate g = *it;
    for ( auto& ct : g.controls )
      ct.line = pinv[ct.line];
    g.target = pinv[g.target];
    if ( g.is_swap_like() )
      g.target2 = pinv[g.target2];
    r.add_gate( std::move( g ) );
  }
  r.set_relabel( pinv );
  return r;
}

/*! \brief Appends `block` to `host`, block position j landing on host position map[j].

  Host positions are followed through the host's current relabeling, so
  blocks with output relabelings can be chained freely.
*/
inline void append( circuit& host, const circuit& block, std::span<const uint32_t> map )
{
  if ( map.size() != block.width() )
    throw std::invalid_argument( "block map size differs from block width" );
  std::vector<uint32_t> phys( map.size() );
  for ( size_t j = 0; j < map.size(); ++j )
    phys[j] = host.line_at( map[j] );
  {
    auto sorted = phys;
    std::sort( sorted.begin(), sorted.end() );
    if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
      throw std::invalid_argument( "block map is not injective" );
  }
  for ( auto g : block.gates() )
  {
    for ( auto& ct : g.controls )
      ct.line = phys[ct.line];
    g.target = phys[g.target];
    if ( g.is_swap_like() )
      g.target2 = phys[g.target2];
    host.add_gate( std::move( g ) );
  }
  auto p = host.relabel();
  for ( size_t j = 0; j < map.size(); ++j )
    p[map[j]] = phys[block.relabel()[j]];
  host.set_relabel( std::move( p ) );
}

inline void append( circuit& host, const circuit& block, std::initializer_list<uint32_t> map )
{
  append( host, block, std::span<const uint32_t>( map.begin(), map.size() ) );
}

/*! \brief Runs `a` then `b` over the same lines. */
inline circuit compose( const circuit& a, const circuit& b )
{
  if ( a.width() != b.width() )
    throw std::invalid_argument( "compose: width mismatch" );
  if ( a.roles() != b.roles() )
    throw std::invalid_argument( "compose: role mismatch" );
  circuit r = a;
  std::vector<uint32_t> id( a.width() );
  std::iota( id.begin(), id.end(), 0u );
  append( r, b, id );
  return r;
}

/*! \brief Swap sequence realizing a relabeling with physical gates. */
inline std::vector<std::pair<uint32_t, uint32_t>> relabel_as_swaps( const std::vector<uint32_t>& p )
{
  std::vector<std::pair<uint32_t, uint32_t>> swaps;
  std::vector<uint32_t> cur( p.size() ), where( p.size() );
  std::iota( cur.begin(), cur.end(), 0u );
  std::iota( where.begin(), where.end(), 0u );
  for ( uint32_t j = 0; j < p.size(); ++j )
  {
    if ( cur[j] == p[j] )
      continue;
    uint32_t k = where[p[j]];
    swaps.emplace_back( j, k );
    std::swap( cur[j], cur[k] );
    where[cur[j]] = j;
    where[cur[k]] = k;
  }
  return swaps;
}

/*! \brief Adds a positive control on `line` to every gate.

  `line` may equal the width, in which case a new control line is appended.
  A relabeling is first turned into swaps so that it becomes conditional.
*/
inline circuit add_control( const circuit& c, uint32_t line )
{
  auto roles = c.roles();
  if ( line == c.width() )
    roles.push_back( line_role::control );
  else if ( line > c.width() )
    throw std::out_of_range( "control line beyond width" );
  else
  {
    bool used = c.relabel()[line] != line;
    for ( auto const& g : c.gates() )
      g.foreach_line( [&]( uint32_t l ) { used |= l == line; } );
    if ( used )
      throw std::invalid_argument( "control line " + std::to_string( line ) + " is used by the circuit" );
  }

  circuit r( roles );
  auto ctl = pos( line );
  auto add = [&]( const gate& g ) {
    switch ( g.kind )
    {
    case gate_kind::swap:
      r.add_gate( gate::fredkin( ctl, g.target, g.target2 ) );
      break;
    case gate_kind::fredkin:
      r.add_gate( gate::mcx( { ctl, pos( g.target2 ) }, g.target ) );
      r.add_gate( gate::mcx( { ctl, g.controls[0], pos( g.target ) }, g.target2 ) );
      r.add_gate( gate::mcx( { ctl, pos( g.target2 ) }, g.target ) );
      break;
    default:
    {
      auto cs = g.controls;
      cs.insert( cs.begin(), ctl );
      r.add_gate( gate::mcx( std::move( cs ), g.target ) );
    }
    }
  };
  for ( auto const& g : c.gates() )
    add( g );
  for ( auto [a, b] : relabel_as_swaps( c.relabel() ) )
    add( gate::swap( a, b ) );
  return r;
}

/* verification */

/*! \brief Output positions of the data register and of the lines that must stay 0. */
struct register_layout
{
  std::vector<uint32_t> data;
  std::vector<uint32_t> clean;
};

/*! \brief Data lines in index order; ancilla and swap lines must return to 0. */
inline register_layout default_layout( const circuit& c )
{
  register_layout l;
  for ( uint32_t i = 0; i < c.width(); ++i )
  {
    if ( c.role( i ) == line_role::data )
      l.data.push_back( i );
    else if ( c.role( i ) == line_role::ancilla || c.role( i ) == line_role::swap )
      l.clean.push_back( i );
  }
  return l;
}

inline uint32_t bit_width_of( uint64_t m )
{
  return m <= 1 ? 0u : static_cast<uint32_t>( std::bit_width( m - 1 ) );
}

/*! \brief Runs `fn(x, out_lanes, lane)` for every x in [0, count), 64 at a time.

  `setup(s, lane, x)` loads an input pattern; all other lines start at 0.
*/
template<typename Setup, typename Check>
void sweep( const circuit& c, uint64_t count, Setup&& setup, Check&& check )
{
  for ( uint64_t base = 0; base < count; base += 64 )
  {
    unsigned n = static_cast<unsigned>( std::min<uint64_t>( 64, count - base ) );
    lanes s( c.width(), 0 );
    for ( unsigned j = 0; j < n; ++j )
      setup( s, j, base + j );
    auto out = simulate_lanes( c, std::move( s ) );
    for ( unsigned j = 0; j < n; ++j )
      if ( !check( out, j, base + j ) )
        return;
  }
}

/*! \brief True iff x -> Cx % M on the data lines for every x < M with clean lines back at 0. */
inline bool verify_modmult( const circuit& c, uint64_t M, uint64_t C, const register_layout& layout )
{
  if ( layout.data.size() != bit_width_of( M ) )
    throw std::invalid_argument( "layout has " + std::to_string( layout.data.size() ) + " data lines, modulus needs " + std::to_string( bit_width_of( M ) ) );
  for ( auto l : layout.data )
    if ( l >= c.width() )
      throw std::out_of_range( "layout line beyond width" );
  for ( auto l : layout.clean )
    if ( l >= c.width() )
      throw std::out_of_range( "layout line beyond width" );
  bool ok = true;
  sweep(
      c, M,
      [&]( lanes& s, unsigned lane, uint64_t x ) { load_register( s, layout.data, lane, x ); },
      [&]( const lanes& out, unsigned lane, uint64_t x ) {
        if ( read_register( out, layout.data, lane ) != ( C % M ) * x % M )
          ok = false;
        for ( auto l : layout.clean )
          if ( ( out[l] >> lane ) & 1u )
            ok = false;
        return ok;
      } );
  return ok;
}

inline bool verify_modmult( const circuit& c, uint64_t M, uint64_t C )
{
  return verify_modmult( c, M, C, default_layout( c ) );
}

/* rewrites */

/*! \brief Asserts that `line` holds `value` just before gate number `before`. */
struct constant_hint
{
  size_t before = 0;
  uint32_t line = 0;
  bool value = false;
};

/*! \brief Constant propagation over zero-initialized lines.

  Gates whose known controls cannot fire are removed, satisfied known
  controls are dropped, and inverters are kept as pending flips that are
  folded into the polarity of later controls. Pending flips left at the end
  are emitted as NOT gates.
*/
inline circuit propagate_constants( const circuit& c, std::vector<constant_hint> hints = {} )
{
  struct line_state
  {
    bool known = false;
    bool value = false; /* physical value when known */
    bool flip = false;  /* logical = physical ^ flip */
  };
  std::vector<line_state> st( c.width() );
  for ( uint32_t i = 0; i < c.width(); ++i )
    if ( starts_zero( c.role( i ) ) )
      st[i].known = true;

  std::stable_sort( hints.begin(), hints.end(), []( auto const& a, auto const& b ) { return a.before < b.before; } );
  size_t next_hint = 0;

  circuit r( c.roles() );
  auto emit_not = [&]( uint32_t l ) {
    r.add_gate( gate::mcx( {}, l ) );
    st[l].value ^= true;
    st[l].flip ^= true;
  };

  for ( size_t gi = 0; gi <= c.num_gates(); ++gi )
  {
    for ( ; next_hint < hints.size() && hints[next_hint].before == gi; ++next_hint )
    {
      auto const& h = hints[next_hint];
      st[h.line].known = true;
      st[h.line].value = h.value ^ st[h.line].flip;
    }
    if ( gi == c.num_gates() )
      break;
    auto const& g = c.gates()[gi];

    bool fires = true;
    std::vector<control> cs;
    for ( auto const& ct : g.controls )
    {
      auto const& s = st[ct.line];
      if ( s.known )
      {
        if ( ( s.value ^ s.flip ) != ct.positive )
        {
          fires = false;
          break;
        }
      }
      else
      {
        cs.push_back( { ct.line, ct.positive != s.flip } );
      }
    }
    if ( !fires )
      continue;

    if ( !g.is_swap_like() )
    {
      if ( cs.empty() )
        st[g.target].flip ^= true;
      else
      {
        r.add_gate( gate::mcx( std::move( cs ), g.target ) );
        st[g.target].known = false;
      }
      continue;
    }

    auto& a = st[g.target];
    auto& b = st[g.target2];
    if ( cs.empty() )
    {
      if ( a.known && b.known )
      {
        bool la = a.value ^ a.flip, lb = b.value ^ b.flip;
        a.flip = lb ^ a.value;
        b.flip = la ^ b.value;
      }
      else
      {
        r.add_gate( gate::swap( g.target, g.target2 ) );
        std::swap( a, b );
      }
      continue;
    }
    if ( a.flip != b.flip )
      emit_not( g.target );
    if ( a.known && b.known && a.value == b.value )
      continue;
    bool zero = ( b.known && !b.value ) || ( g.zero_input && !b.flip );
    r.add_gate( gate::fredkin( cs.front(), g.target, g.target2, zero ) );
    a.known = b.known = false;
  }

  for ( uint32_t l = 0; l < c.width(); ++l )
    if ( st[l].flip )
      emit_not( l );
  r.set_relabel( c.relabel() );
  return r;
}

/*! \brief Merges CNOT(a,b) CNOT(b,a) CNOT(a,b) triples into SWAP gates. */
inline circuit merge_cnot_swaps( const circuit& c )
{
  circuit r( c.roles() );
  auto const& gs = c.gates();
  auto plain = [&]( size_t i, uint32_t from, uint32_t to ) {
    auto const& g = gs[i];
    return g.kind == gate_kind::cnot && g.controls[0].positive && g.controls[0].line == from && g.target == to;
  };
  for ( size_t i = 0; i < gs.size(); ++i )
  {
    if ( i + 2 < gs.size() && gs[i].kind == gate_kind::cnot && gs[i].controls[0].positive )
    {
      uint32_t a = gs[i].controls[0].line, b = gs[i].target;
      if ( plain( i + 1, b, a ) && plain( i + 2, a, b ) )
      {
        r.add_gate( gate::swap( a, b ) );
        i += 2;
        continue;
      }
    }
    r.add_gate( gs[i] );
  }
  r.set_relabel( c.relabel() );
  return r;
}

/*! \brief Replaces every unconditional SWAP by renaming later gates and the outputs. */
inline circuit swaps_to_relabel( const circuit& c )
{
  std::vector<uint32_t> w( c.width() );
  std::iota( w.begin(), w.end(), 0u );
  circuit r( c.roles() );
  for ( auto g : c.gates() )
  {
    if ( g.kind == gate_kind::swap )
    {
      std::swap( w[g.target], w[g.target2] );
      continue;
    }
    for ( auto& ct : g.controls )
      ct.line = w[ct.line];
    g.target = w[g.target];
    if ( g.is_swap_like() )
      g.target2 = w[g.target2];
    r.add_gate( std::move( g ) );
  }
  std::vector<uint32_t> p( c.width() );
  for ( uint32_t j = 0; j < c.width(); ++j )
    p[j] = w[c.relabel()[j]];
  r.set_relabel( std::move( p ) );
  return r;
}

/*! \brief Drops ancilla lines that no gate touches and the relabeling fixes.

  `old_to_new[i]` receives the new index of line i, or -1 when removed.
*/
inline circuit remove_idle_lines( const circuit& c, std::vector<int64_t>* old_to_new = nullptr )
{
  std::vector<bool> used( c.width() );
  for ( auto const& g : c.gates() )
    g.foreach_line( [&]( uint32_t l ) { used[l] = true; } );
  std::vector<int64_t> map( c.width(), -1 );
  std::vector<line_role> roles;
  for ( uint32_t i = 0; i < c.width(); ++i )
  {
    bool idle = !used[i] && c.relabel()[i] == i && c.role( i ) == line_role::ancilla;
    if ( !idle )
    {
      map[i] = static_cast<int64_t>( roles.size() );
      roles.push_back( c.role( i ) );
    }
  }
  circuit r( roles );
  for ( auto g : c.gates() )
  {
    for ( auto& ct : g.controls )
      ct.line = static_cast<uint32_t>( map[ct.line] );
    g.target = static_cast<uint32_t>( map[g.target] );
    if ( g.is_swap_like() )
      g.target2 = static_cast<uint32_t>( map[g.target2] );
    r.add_gate( std::move( g ) );
  }
  std::vector<uint32_t> p;
  for ( uint32_t i = 0; i < c.width(); ++i )
    if ( map[i] >= 0 )
      p.push_back( static_cast<uint32_t>( map[c.relabel()[i]] ) );
  r.set_relabel( std::move( p ) );
  if ( old_to_new )
    *old_to_new = std::move( map );
  return r;
}

/* text format */

class parse_error : public std::runtime_error
{
public:
  parse_error( size_t line, const std::string& what )
      : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), line_( line ) {}

  size_t line() const { return line_; }

private:
  size_t line_;
};

inline std::string to_text( const circuit& c )
{
  std::ostringstream os;
  os << "lines " << c.width() << "\nroles";
  for ( auto r : c.roles() )
    os << ' ' << role_char( r );
  os << '\n';
  auto ctl = [&]( const control& ct ) { os << ' ' << ( ct.positive ? '+' : '-' ) << ct.line; };
  for ( auto const& g : c.gates() )
  {
    switch ( g.kind )
    {
    case gate_kind::not_gate:
      os << "n " << g.target;
      break;
    case gate_kind::cnot:
      os << 'c';
      ctl( g.controls[0] );
      os << ' ' << g.target;
      break;
    case gate_kind::toffoli:
      os << 't';
      for ( auto const& ct : g.controls )
        ctl( ct );
      os << ' ' << g.target;
      break;
    case gate_kind::swap:
      os << "s " << g.target << ' ' << g.target2;
      break;
    case gate_kind::fredkin:
      os << 'f';
      ctl( g.controls[0] );
      os << ' ' << g.target << ' ' << g.target2;
      if ( g.zero_input )
        os << " z";
      break;
    }
    os << '\n';
  }
  if ( c.has_relabel() )
  {
    os << "relabel";
    for ( auto v : c.relabel() )
      os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

/*! \brief Parses the text format; a trailing `z` on a Fredkin line sets the zero-input flag. */
inline circuit parse_circuit( const std::string& text )
{
  std::istringstream is( text );
  std::string raw;
  size_t lineno = 0;
  int64_t width = -1;
  circuit c;
  bool have_roles = false, have_relabel = false;

  auto number = [&]( const std::string& tok ) -> uint32_t {
    if ( tok.empty() || !std::all_of( tok.begin(), tok.end(), []( unsigned char ch ) { return std::isdigit( ch ); } ) )
      throw parse_error( lineno, "expected a line index, got '" + tok + "'" );
    auto v = std::stoull( tok );
    if ( width >= 0 && v >= static_cast<uint64_t>( width ) )
      throw parse_error( lineno, "line index " + tok + " out of range" );
    return static_cast<uint32_t>( v );
  };
  auto ctl = [&]( const std::string& tok ) -> control {
    if ( tok.size() < 2 || ( tok[0] != '+' && tok[0] != '-' ) )
      throw parse_error( lineno, "expected a polarized control, got '" + tok + "'" );
    return { number( tok.substr( 1 ) ), tok[0] == '+' };
  };

  while ( std::getline( is, raw ) )
  {
    ++lineno;
    if ( auto h = raw.find( '#' ); h != std::string::npos )
      raw.erase( h );
    std::istringstream ls( raw );
    std::vector<std::string> tok;
    for ( std::string t; ls >> t; )
      tok.push_back( t );
    if ( tok.empty() )
      continue;
    auto const& kw = tok[0];
    if ( kw == "lines" )
    {
      if ( width >= 0 || tok.size() != 2 )
        throw parse_error( lineno, "malformed 'lines' header" );
      width = number( tok[1] );
      continue;
    }
    if ( width < 0 )
      throw parse_error( lineno, "'lines' header must come first" );
    if ( have_relabel )
      throw parse_error( lineno, "nothing may follow 'relabel'" );
    if ( kw == "roles" )
    {
      if ( have_roles || tok.size() != static_cast<size_t>( width ) + 1 )
        throw parse_error( lineno, "malformed 'roles' line" );
      std::vector<line_role> roles;
      for ( size_t i = 1; i < tok.size(); ++i )
      {
        if ( tok[i].size() != 1 )
          throw parse_error( lineno, "bad role '" + tok[i] + "'" );
        try
        {
          roles.push_back( role_from_char( tok[i][0] ) );
        }
        catch ( const std::invalid_argument& e )
        {
          throw parse_error( lineno, e.what() );
        }
      }
      c = circuit( std::move( roles ) );
      have_roles = true;
      continue;
    }
    if ( !have_roles )
    {
      c = circuit( std::vector<line_role>( width, line_role::data ) );
      have_roles = true;
    }
    try
    {
      if ( kw == "n" && tok.size() == 2 )
        c.add_gate( gate::mcx( {}, number( tok[1] ) ) );
      else if ( kw == "c" && tok.size() == 3 )
        c.add_gate( gate::mcx( { ctl( tok[1] ) }, number( tok[2] ) ) );
      else if ( kw == "t" && tok.size() >= 4 )
      {
        std::vector<control> cs;
        for ( size_t i = 1; i + 1 < tok.size(); ++i )
          cs.push_back( ctl( tok[i] ) );
        c.add_gate( gate::mcx( std::move( cs ), number( tok.back() ) ) );
      }
      else if ( kw == "s" && tok.size() == 3 )
        c.add_gate( gate::swap( number( tok[1] ), number( tok[2] ) ) );
      else if ( kw == "f" && ( tok.size() == 4 || ( tok.size() == 5 && tok[4] == "z" ) ) )
        c.add_gate( gate::fredkin( ctl( tok[1] ), number( tok[2] ), number( tok[3] ), tok.size() == 5 ) );
      else if ( kw == "relabel" && tok.size() == static_cast<size_t>( width ) + 1 )
      {
        std::vector<uint32_t> p;
        for ( size_t i = 1; i < tok.size(); ++i )
          p.push_back( number( tok[i] ) );
        c.set_relabel( std::move( p ) );
        have_relabel = true;
      }
      else
        throw parse_error( lineno, "unrecognized item '" + raw + "'" );
    }
    catch ( const parse_error& )
    {
      throw;
    }
    catch ( const std::exception& e )
    {
      throw parse_error( lineno, e.what() );
    }
  }
  if ( width < 0 )
    throw parse_error( lineno, "missing 'lines' header" );
  if ( !have_roles )
    c = circuit( std::vector<line_role>( width, line_role::data ) );
  return c;
}

} // namespace revmod
