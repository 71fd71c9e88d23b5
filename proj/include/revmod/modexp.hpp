/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file modexp.hpp
  \brief Modular exponentiation b^y % M: look-up tables, negation factoring, multiplexed multipliers
*/

#pragma once

#include "pathsynth.hpp"

#include <memory>

namespace revmod
{

/* two-input functions */

/*! \brief Truth table of F(a, b); bit m holds F on minterm m = 2a + b. */
struct bool_func2
{
  uint8_t table = 0;

  bool operator==( const bool_func2& ) const = default;
  bool eval( bool a, bool b ) const { return ( table >> ( 2 * a + b ) ) & 1u; }
};

/*! \brief Function column of the two-input table: minterms 3, 1, 2, 0 from left to right. */
inline std::string function_string( bool_func2 f )
{
  std::string s;
  for ( int m : { 3, 1, 2, 0 } )
    s += ( ( f.table >> m ) & 1u ) ? '1' : '0';
  return s;
}

inline std::vector<uint32_t> minterms( bool_func2 f )
{
  std::vector<uint32_t> ms;
  for ( uint32_t m = 0; m < 4; ++m )
    if ( ( f.table >> m ) & 1u )
      ms.push_back( m );
  return ms;
}

namespace detail
{

/* emits F(a, b) into z, every gate additionally controlled by `extra` */
inline void emit_2input( circuit& c, bool_func2 f, uint32_t a, uint32_t b, uint32_t z, const std::vector<control>& extra )
{
  auto with = [&]( std::vector<control> cs ) {
    cs.insert( cs.end(), extra.begin(), extra.end() );
    c.add_gate( gate::mcx( std::move( cs ), z ) );
  };
  auto ms = minterms( f );
  switch ( ms.size() )
  {
  case 0:
    return;
  case 1:
    with( { { a, ( ms[0] >> 1 ) != 0 }, { b, ( ms[0] & 1u ) != 0 } } );
    return;
  case 2:
    switch ( f.table )
    {
    case 0b0011: /* 0,1 */
      with( { neg( a ) } );
      return;
    case 0b1100: /* 2,3 */
      with( { pos( a ) } );
      return;
    case 0b0101: /* 0,2 */
      with( { neg( b ) } );
      return;
    case 0b1010: /* 1,3 */
      with( { pos( b ) } );
      return;
    case 0b0110: /* 1,2 */
      with( { pos( a ) } );
      with( { pos( b ) } );
      return;
    default: /* 0,3 */
      with( { pos( a ) } );
      with( { pos( b ) } );
      with( {} );
      return;
    }
  case 3:
  {
    uint32_t missing = static_cast<uint32_t>( std::countr_zero( static_cast<unsigned>( ~f.table & 0xFu ) ) );
    with( { { a, ( missing >> 1 ) != 0 }, { b, ( missing & 1u ) != 0 } } );
    with( {} );
    return;
  }
  default:
    with( {} );
  }
}

struct lut_cost
{
  uint64_t toffoli = 0;
  uint64_t gates = 0;

  auto operator<=>( const lut_cost& ) const = default;
  lut_cost operator+( const lut_cost& o ) const { return { toffoli + o.toffoli, gates + o.gates }; }
};

inline lut_cost cost_2input( bool_func2 f, uint32_t extra )
{
  circuit c( std::vector<line_role>( 3 + extra, line_role::data ) );
  std::vector<control> cs;
  for ( uint32_t i = 0; i < extra; ++i )
    cs.push_back( pos( 3 + i ) );
  emit_2input( c, f, 0, 1, 2, cs );
  return { counts( c ).toffoli, c.num_gates() };
}

} // namespace detail

/*! \brief Three-line circuit (a, b, z) writing F(a, b) into the zero-initialized z. */
inline circuit synth_2input( bool_func2 f )
{
  circuit c( std::vector<line_role>( 3, line_role::data ) );
  c.set_role( 0, line_role::control );
  c.set_role( 1, line_role::control );
  c.set_role( 2, line_role::ancilla );
  detail::emit_2input( c, f, 0, 1, 2, {} );
  return c;
}

/* look-up tables */

struct lut_spec
{
  uint32_t k = 0;
  uint32_t m = 0;
  std::vector<uint64_t> values; /* values[y] for the input word y */
};

struct lut_output_stats
{
  uint64_t gates = 0;
  uint64_t four_input = 0; /* Toffolis with three controls */
  uint64_t larger = 0;     /* gates with more than three controls */
  bool copied = false;     /* reuses an earlier output with the same truth table */
};

struct lut_circuit
{
  circuit c;
  std::vector<uint32_t> inputs;
  std::vector<uint32_t> outputs;
  std::optional<uint32_t> ancilla;
  std::vector<lut_output_stats> stats;
};

namespace detail
{

inline uint16_t output_table( const lut_spec& s, uint32_t bit )
{
  uint16_t t = 0;
  for ( uint32_t y = 0; y < ( 1u << s.k ); ++y )
    if ( ( s.values[y] >> bit ) & 1u )
      t |= static_cast<uint16_t>( 1u << y );
  return t;
}

/* two-input restriction of a k-input table over variables (va high, vb low); `fixed` assigns the rest */
inline bool_func2 restrict2( uint16_t t, uint32_t va, uint32_t vb, uint32_t fixed )
{
  bool_func2 f;
  for ( uint32_t a = 0; a < 2; ++a )
    for ( uint32_t b = 0; b < 2; ++b )
    {
      uint32_t y = fixed | ( a << va ) | ( b << vb );
      if ( ( t >> y ) & 1u )
        f.table |= static_cast<uint8_t>( 1u << ( 2 * a + b ) );
    }
  return f;
}

inline void note_gate( lut_output_stats& st, const gate& g )
{
  ++st.gates;
  if ( g.controls.size() == 3 )
    ++st.four_input;
  else if ( g.controls.size() > 3 )
    ++st.larger;
}

struct emit_job
{
  bool_func2 f;
  uint32_t a, b;
  std::vector<control> extra;
};

} // namespace detail

/*! \brief Reversible (k, m) look-up table with read-only inputs and zero-initialized outputs.

  Outputs over at most two inputs come straight from the two-input table.
  Three inputs use a Davio expansion around the cheapest pivot; four inputs
  use double cofactors over the cheapest variable pair, with one shared
  ancilla enabling the product term.
*/
inline lut_circuit synth_lut( const lut_spec& s )
{
  if ( s.k > 4 )
    throw std::invalid_argument( "look-up tables take at most 4 inputs" );
  if ( s.values.size() != ( size_t{ 1 } << s.k ) )
    throw std::invalid_argument( "look-up table needs 2^k values" );
  if ( s.m > 64 )
    throw std::invalid_argument( "look-up table output too wide" );
  for ( auto v : s.values )
    if ( s.m < 64 && ( v >> s.m ) != 0 )
      throw std::invalid_argument( "look-up table value exceeds m bits" );

  lut_circuit r;
  r.c = circuit( std::vector<line_role>( s.k + s.m, line_role::data ) );
  for ( uint32_t i = 0; i < s.k; ++i )
  {
    r.inputs.push_back( i );
    r.c.set_role( i, line_role::control );
  }
  for ( uint32_t j = 0; j < s.m; ++j )
    r.outputs.push_back( s.k + j );
  r.stats.resize( s.m );

  auto emit = [&]( uint32_t out, const detail::emit_job& j ) {
    size_t before = r.c.num_gates();
    detail::emit_2input( r.c, j.f, r.inputs[j.a], r.inputs[j.b], r.outputs[out], j.extra );
    for ( size_t g = before; g < r.c.num_gates(); ++g )
      detail::note_gate( r.stats[out], r.c.gates()[g] );
  };

  std::vector<uint16_t> tables( s.m );
  for ( uint32_t j = 0; j < s.m; ++j )
    tables[j] = detail::output_table( s, j );
  const uint16_t full = static_cast<uint16_t>( ( 1u << ( 1u << s.k ) ) - 1u );

  /* outputs that repeat an earlier table (or its complement) are copied at the end */
  std::vector<std::pair<uint32_t, bool>> copy_of( s.m, { UINT32_MAX, false } );
  for ( uint32_t j = 0; j < s.m; ++j )
    for ( uint32_t i = 0; i < j && copy_of[j].first == UINT32_MAX; ++i )
      if ( copy_of[i].first == UINT32_MAX && tables[i] != 0 && tables[i] != full )
      {
        if ( tables[j] == tables[i] )
          copy_of[j] = { i, false };
        else if ( tables[j] == static_cast<uint16_t>( full & ~tables[i] ) )
          copy_of[j] = { i, true };
      }

  /* ancilla groups for k = 4: literal pair -> outputs' product terms */
  std::map<std::tuple<uint32_t, uint32_t, bool, bool>, std::vector<std::pair<uint32_t, detail::emit_job>>> groups;

  for ( uint32_t j = 0; j < s.m; ++j )
  {
    if ( copy_of[j].first != UINT32_MAX )
      continue;
    const uint16_t t = tables[j];
    if ( s.k == 0 )
    {
      if ( t & 1u )
      {
        r.c.x( r.outputs[j] );
        ++r.stats[j].gates;
      }
    }
    else if ( s.k == 1 )
    {
      bool f0 = t & 1u, f1 = ( t >> 1 ) & 1u;
      if ( f0 && f1 )
        r.c.x( r.outputs[j] );
      else if ( f0 || f1 )
        r.c.cx( { r.inputs[0], f1 }, r.outputs[j] );
      if ( f0 || f1 )
        ++r.stats[j].gates;
    }
    else if ( s.k == 2 )
    {
      emit( j, { detail::restrict2( t, 1, 0, 0 ), 1, 0, {} } );
    }
    else if ( s.k == 3 )
    {
      /* F = F_{p=s} ^ [p == !s] (F_p ^ F_p') */
      std::optional<std::tuple<detail::lut_cost, detail::emit_job, detail::emit_job>> best;
      for ( uint32_t p = 0; p < 3; ++p )
      {
        uint32_t va = p == 2 ? 1 : 2, vb = p == 0 ? 1 : 0;
        auto f0 = detail::restrict2( t, va, vb, 0 ), f1 = detail::restrict2( t, va, vb, 1u << p );
        bool_func2 g{ static_cast<uint8_t>( f0.table ^ f1.table ) };
        for ( bool anchor : { false, true } )
        {
          auto base = anchor ? f1 : f0;
          auto cost = detail::cost_2input( base, 0 ) + detail::cost_2input( g, 1 );
          if ( !best || cost < std::get<0>( *best ) )
            best = { cost, { base, va, vb, {} }, { g, va, vb, { { r.inputs[p], !anchor } } } };
        }
      }
      emit( j, std::get<1>( *best ) );
      emit( j, std::get<2>( *best ) );
    }
    else
    {
      /* double cofactors over (x, y) anchored at (sx, sy):
         F = F_s ^ lx (F_s ^ F_{!sx,sy}) ^ ly (F_s ^ F_{sx,!sy}) ^ lx ly (F_00 ^ F_01 ^ F_10 ^ F_11) */
      struct choice
      {
        detail::lut_cost cost;
        uint32_t x, y;
        bool sx, sy;
        detail::emit_job base, tx, ty, txy;
      };
      std::optional<choice> best;
      for ( uint32_t x = 0; x < 4; ++x )
        for ( uint32_t y = x + 1; y < 4; ++y )
        {
          std::vector<uint32_t> rest;
          for ( uint32_t v = 0; v < 4; ++v )
            if ( v != x && v != y )
              rest.push_back( v );
          uint32_t va = rest[1], vb = rest[0];
          auto F = [&]( bool bx, bool by ) { return detail::restrict2( t, va, vb, ( uint32_t( bx ) << x ) | ( uint32_t( by ) << y ) ); };
          auto xr = []( bool_func2 a, bool_func2 b ) { return bool_func2{ static_cast<uint8_t>( a.table ^ b.table ) }; };
          auto all4 = xr( xr( F( 0, 0 ), F( 0, 1 ) ), xr( F( 1, 0 ), F( 1, 1 ) ) );
          for ( int anchor = 0; anchor < 4; ++anchor )
          {
            bool sx = anchor >> 1, sy = anchor & 1;
            auto base = F( sx, sy );
            auto gx = xr( base, F( !sx, sy ) ), gy = xr( base, F( sx, !sy ) );
            auto cost = detail::cost_2input( base, 0 ) + detail::cost_2input( gx, 1 ) + detail::cost_2input( gy, 1 ) +
                        detail::cost_2input( all4, 1 );
            if ( !best || cost < best->cost )
              best = choice{ cost, x, y, sx, sy, { base, va, vb, {} }, { gx, va, vb, { { r.inputs[x], !sx } } },
                             { gy, va, vb, { { r.inputs[y], !sy } } }, { all4, va, vb, {} } };
          }
        }
      emit( j, best->base );
      emit( j, best->tx );
      emit( j, best->ty );
      if ( best->txy.f.table != 0 )
        groups[{ best->x, best->y, !best->sx, !best->sy }].push_back( { j, best->txy } );
    }
  }

  if ( !groups.empty() )
  {
    r.ancilla = r.c.add_line( line_role::ancilla );
    for ( auto& [key, members] : groups )
    {
      auto [x, y, px, py] = key;
      auto set = gate::mcx( { { r.inputs[x], px }, { r.inputs[y], py } }, *r.ancilla );
      r.c.add_gate( set );
      for ( auto& [out, job] : members )
      {
        job.extra = { pos( *r.ancilla ) };
        emit( out, job );
      }
      r.c.add_gate( set );
    }
  }

  for ( uint32_t j = 0; j < s.m; ++j )
  {
    auto [src, inverted] = copy_of[j];
    if ( src == UINT32_MAX )
      continue;
    r.c.cx( pos( r.outputs[src] ), r.outputs[j] );
    if ( inverted )
      r.c.x( r.outputs[j] );
    r.stats[j] = { inverted ? 2u : 1u, 0, 0, true };
  }
  return r;
}

/*! \brief True iff every input word yields its table value with the inputs kept and the ancilla cleared. */
inline bool verify_lut( const lut_circuit& l, const lut_spec& s )
{
  bool ok = true;
  sweep(
      l.c, uint64_t{ 1 } << s.k, [&]( lanes& st, unsigned lane, uint64_t y ) { load_register( st, l.inputs, lane, y ); },
      [&]( const lanes& out, unsigned lane, uint64_t y ) {
        if ( read_register( out, l.inputs, lane ) != y || read_register( out, l.outputs, lane ) != s.values[y] )
          ok = false;
        if ( l.ancilla && ( ( out[*l.ancilla] >> lane ) & 1u ) )
          ok = false;
        return ok;
      } );
  return ok;
}

/* bases and controls */

/*! \brief First of 2, 3, 5, 7, 11, ... that is admissible for M and has a useful period. */
inline uint64_t select_base( uint64_t M, uint64_t prime_limit = 64 )
{
  if ( M < 4 || M % 2 == 0 )
    throw std::invalid_argument( "select_base needs an odd modulus > 3" );
  for ( auto b : primes_below( std::min( prime_limit, M ) ) )
  {
    if ( std::gcd( b, M ) != 1 )
      continue;
    if ( multiplicative_order( b, M ).useful )
      return b;
  }
  throw std::runtime_error( "no prime base below " + std::to_string( prime_limit ) + " has a useful period mod " + std::to_string( M ) );
}

/*! \brief Control qubits for a period: ceil(log2 period). */
inline uint32_t select_controls( uint64_t period )
{
  if ( period < 2 )
    throw std::invalid_argument( "period must be at least 2" );
  return ceil_log2( period );
}

/* planning */

enum class placement
{
  lut,
  multiplexed
};

struct planned_multiplier
{
  uint32_t index = 0;  /* control bit */
  uint64_t c = 0;      /* b^(2^index) % M */
  bool negated = false; /* implemented as -(M - c) */
  placement place = placement::multiplexed;
  uint64_t cost = 0;   /* cost of the implemented multiplier */

  uint64_t implemented( uint64_t M ) const { return negated ? M - c : c; }
};

struct modexp_plan
{
  uint64_t modulus = 0;
  uint64_t base = 0;
  uint32_t controls = 0;
  std::vector<planned_multiplier> multipliers; /* LUT entries first, then multiplexed, in circuit order */
  std::vector<uint32_t> lut_inputs;
  std::vector<uint64_t> lut_values;
  std::vector<uint32_t> negation_controls;
  bool shares_ancillae = true; /* filled in by assemble */
};

using mult_cost_oracle = std::function<uint64_t( uint64_t C )>;

/*! \brief Costs from the operator-machine search; 0 for C = 1. */
inline mult_cost_oracle dijkstra_cost_oracle( uint64_t M )
{
  auto table = std::make_shared<synth_result>( dijkstra_all( M ) );
  return [table]( uint64_t C ) -> uint64_t { return C % table->M == 1 ? 0 : table->at( C % table->M ).cost; };
}

inline modexp_plan plan( uint64_t M, uint64_t b, uint32_t l, const mult_cost_oracle& cost, uint32_t max_lut = 4 )
{
  if ( b <= 1 || b >= M || std::gcd( b, M ) != 1 )
    throw std::invalid_argument( "base " + std::to_string( b ) + " is not admissible for " + std::to_string( M ) );
  if ( l == 0 )
    throw std::invalid_argument( "at least one control is needed" );
  if ( max_lut > 4 )
    throw std::invalid_argument( "look-up tables take at most 4 inputs" );
  modexp_plan p;
  p.modulus = M;
  p.base = b;
  p.controls = l;

  std::vector<planned_multiplier> all;
  uint64_t c = b % M;
  for ( uint32_t i = 0; i < l; ++i, c = c * c % M )
  {
    planned_multiplier m{ i, c, false, placement::multiplexed, cost( c ) };
    if ( c != 1 )
    {
      auto nc = cost( M - c );
      if ( nc < m.cost )
      {
        m.negated = true;
        m.cost = nc;
      }
    }
    all.push_back( m );
  }

  /* the costliest multiplications go into the table; ties keep the lower index */
  std::vector<uint32_t> order( l );
  std::iota( order.begin(), order.end(), 0u );
  std::stable_sort( order.begin(), order.end(), [&]( uint32_t a, uint32_t b ) { return all[a].cost > all[b].cost; } );
  const uint32_t k = std::min( l, max_lut );
  std::vector<bool> in_lut( l, false );
  for ( uint32_t i = 0; i < k; ++i )
    in_lut[order[i]] = true;

  for ( uint32_t i = 0; i < l; ++i )
    if ( in_lut[i] )
    {
      auto m = all[i];
      m.negated = false;
      m.cost = 0;
      m.place = placement::lut;
      p.lut_inputs.push_back( i );
      p.multipliers.push_back( m );
    }
  for ( uint32_t i = 0; i < l; ++i )
    if ( !in_lut[i] )
    {
      p.multipliers.push_back( all[i] );
      if ( all[i].negated )
        p.negation_controls.push_back( i );
    }

  p.lut_values.assign( size_t{ 1 } << p.lut_inputs.size(), 1 % M );
  for ( uint64_t y = 0; y < p.lut_values.size(); ++y )
    for ( size_t j = 0; j < p.lut_inputs.size(); ++j )
      if ( ( y >> j ) & 1u )
        p.lut_values[y] = p.lut_values[y] * all[p.lut_inputs[j]].c % M;
  return p;
}

/* assembly */

/*! \brief CNOT chain folding the parity of `controls` into the last one. */
inline void emit_parity( circuit& c, const std::vector<uint32_t>& controls )
{
  for ( size_t i = 0; i + 1 < controls.size(); ++i )
    c.cx( pos( controls[i] ), controls.back() );
}

enum class mux_stage
{
  first,
  intermediate,
  last
};

/*! \brief One merged 2-to-2 multiplexer between the result register R and the swap register S.

  first: swap R and S iff ctrl_b = 0, S known zero (one Toffoli and one CNOT per line).
  intermediate: swap iff ctrl_a != ctrl_b, one of R and S holding zero.
  last: swap back iff ctrl_a = 0, leaving S zero (one Toffoli and one CNOT per line).
*/
inline void emit_multiplexer( circuit& c, mux_stage stage, const std::vector<uint32_t>& R, const std::vector<uint32_t>& S,
                              uint32_t ctrl_a, uint32_t ctrl_b )
{
  if ( R.size() != S.size() )
    throw std::invalid_argument( "multiplexer registers differ in width" );
  switch ( stage )
  {
  case mux_stage::first:
    for ( size_t i = 0; i < R.size(); ++i )
      c.emit( gate::fredkin( neg( ctrl_b ), R[i], S[i], true ) );
    break;
  case mux_stage::intermediate:
    c.cx( pos( ctrl_a ), ctrl_b );
    for ( size_t i = 0; i < R.size(); ++i )
      c.emit( gate::fredkin( pos( ctrl_b ), R[i], S[i] ) );
    c.cx( pos( ctrl_a ), ctrl_b );
    break;
  case mux_stage::last:
    for ( size_t i = 0; i < R.size(); ++i )
    {
      c.cx( pos( S[i] ), R[i] );
      c.ccx( neg( ctrl_a ), pos( R[i] ), S[i] );
    }
    break;
  }
}

using mult_provider = std::function<block( uint64_t C )>;

/*! \brief Verified Cx % M blocks that map zero to zero. */
inline mult_provider default_mult_provider( uint64_t M )
{
  auto table = std::make_shared<synth_result>( dijkstra_all( M ) );
  return [M, table]( uint64_t C ) { return synth_mult( M, C, mult_method::automatic, table.get(), true ).blk; };
}

struct modexp_circuit
{
  circuit c;
  std::vector<uint32_t> controls;
  std::vector<uint32_t> result;
  gate_counts lut_counts, negation, mult, mux;
  std::vector<lut_output_stats> lut_stats;
  lut_spec lut;
  bool shares_ancillae = true;
};

namespace detail
{

/* with x = 0 and any w in [1, M) parked on `park`, the block must leave everything unchanged */
inline bool tolerates_parked_value( const block& b, const std::vector<uint32_t>& park, uint64_t M )
{
  auto const& x = b.reg( "x" );
  std::vector<uint32_t> others;
  for ( uint32_t i = 0; i < b.c.width(); ++i )
    if ( std::find( x.begin(), x.end(), i ) == x.end() && std::find( park.begin(), park.end(), i ) == park.end() )
      others.push_back( i );
  bool ok = true;
  sweep(
      b.c, M - 1, [&]( lanes& s, unsigned lane, uint64_t w ) { load_register( s, park, lane, w + 1 ); },
      [&]( const lanes& out, unsigned lane, uint64_t w ) {
        if ( read_register( out, x, lane ) != 0 || read_register( out, park, lane ) != ( ( w + 1 ) & low_mask( static_cast<uint32_t>( park.size() ) ) ) )
          ok = false;
        for ( auto l : others )
          if ( ( out[l] >> lane ) & 1u )
            ok = false;
        return ok;
      } );
  return ok;
}

} // namespace detail

/*! \brief Full b^y % M circuit for a plan.

  Lines: l controls, the n-bit result register (zero on input), then the
  swap register and ancillae. The swap register doubles as zero scratch for
  the table and the negation, and for multiplexed blocks that provably leave
  a parked value intact.
*/
inline modexp_circuit assemble( modexp_plan& p, const mult_provider& provider )
{
  const uint64_t M = p.modulus;
  const uint32_t n = ceil_log2( M );
  modexp_circuit r;
  circuit& c = r.c;
  for ( uint32_t i = 0; i < p.controls; ++i )
    r.controls.push_back( c.add_line( line_role::control ) );
  for ( uint32_t i = 0; i < n; ++i )
    r.result.push_back( c.add_line( line_role::data ) );

  std::vector<planned_multiplier> muxed;
  for ( auto const& m : p.multipliers )
    if ( m.place == placement::multiplexed && m.implemented( M ) != 1 )
      muxed.push_back( m );

  std::vector<uint32_t> S;
  if ( !muxed.empty() )
    for ( uint32_t i = 0; i < n; ++i )
      S.push_back( c.add_line( line_role::swap ) );

  /* zero lines: the swap register first (when allowed), then a shared pool */
  std::vector<uint32_t> pool;
  auto zeros = [&]( size_t count, bool use_swap ) {
    std::vector<uint32_t> v;
    if ( use_swap )
      v.assign( S.begin(), S.begin() + std::min( S.size(), count ) );
    size_t need = count - v.size();
    while ( pool.size() < need )
      pool.push_back( c.add_line( line_role::ancilla ) );
    v.insert( v.end(), pool.begin(), pool.begin() + need );
    return v;
  };
  auto tally = [&]( gate_counts& into, size_t from ) {
    for ( size_t i = from; i < c.num_gates(); ++i )
    {
      auto k = gate_cost( c.gates()[i] );
      into.toffoli += k.toffoli;
      into.cnot += k.cnot;
      into.nots += k.nots;
    }
  };

  /* table */
  size_t mark = c.num_gates();
  r.lut = { static_cast<uint32_t>( p.lut_inputs.size() ), n, p.lut_values };
  {
    auto l = synth_lut( r.lut );
    std::vector<uint32_t> map;
    for ( auto i : p.lut_inputs )
      map.push_back( r.controls[i] );
    map.insert( map.end(), r.result.begin(), r.result.end() );
    if ( l.ancilla )
      map.push_back( zeros( 1, true )[0] );
    append( c, l.c, map );
    r.lut_stats = l.stats;
  }
  tally( r.lut_counts, mark );

  /* consolidated negation */
  mark = c.num_gates();
  if ( !p.negation_controls.empty() )
  {
    std::vector<uint32_t> ctl;
    for ( auto i : p.negation_controls )
      ctl.push_back( r.controls[i] );
    auto nb = neg_mod_exact( M, true );
    emit_parity( c, ctl );
    std::vector<uint32_t> map( nb.c.width(), UINT32_MAX );
    auto const& x = nb.reg( "x" );
    for ( size_t i = 0; i < n; ++i )
      map[x[i]] = r.result[i];
    map[nb.reg( "ctrl" )[0]] = ctl.back();
    std::vector<uint32_t> anc;
    for ( uint32_t i = 0; i < nb.c.width(); ++i )
      if ( map[i] == UINT32_MAX )
        anc.push_back( i );
    auto z = zeros( anc.size(), true );
    for ( size_t i = 0; i < anc.size(); ++i )
      map[anc[i]] = z[i];
    append( c, nb.c, map );
    emit_parity( c, ctl );
  }
  tally( r.negation, mark );

  /* multiplexed multipliers */
  p.shares_ancillae = true;
  for ( size_t s = 0; s < muxed.size(); ++s )
  {
    const uint32_t ctl = r.controls[muxed[s].index];
    mark = c.num_gates();
    if ( s == 0 )
      emit_multiplexer( c, mux_stage::first, r.result, S, ctl, ctl );
    else
      emit_multiplexer( c, mux_stage::intermediate, r.result, S, r.controls[muxed[s - 1].index], ctl );
    tally( r.mux, mark );

    mark = c.num_gates();
    auto blk = provider( muxed[s].implemented( M ) );
    if ( !blk.shares_ancillae )
      throw std::logic_error( "multiplexed block does not fix zero" );
    std::vector<uint32_t> anc;
    for ( uint32_t i = 0; i < blk.c.width(); ++i )
      if ( starts_zero( blk.c.role( i ) ) )
        anc.push_back( i );
    std::vector<uint32_t> park( anc.begin(), anc.begin() + std::min<size_t>( anc.size(), n ) );
    bool share = !park.empty() && detail::tolerates_parked_value( blk, park, M );
    if ( !share && !anc.empty() )
      p.shares_ancillae = false;

    std::vector<uint32_t> map( blk.c.width(), UINT32_MAX );
    auto const& x = blk.reg( "x" );
    if ( x.size() != n )
      throw std::logic_error( "multiplexed block width differs from the result register" );
    for ( size_t i = 0; i < n; ++i )
      map[x[i]] = r.result[i];
    size_t parked = share ? park.size() : 0;
    for ( size_t i = 0; i < parked; ++i )
      map[anc[i]] = S[i];
    std::vector<uint32_t> rest;
    for ( uint32_t i = 0; i < blk.c.width(); ++i )
      if ( map[i] == UINT32_MAX )
      {
        if ( !starts_zero( blk.c.role( i ) ) )
          throw std::logic_error( "multiplexed block has unbound input lines" );
        rest.push_back( i );
      }
    auto z = zeros( rest.size(), false );
    for ( size_t i = 0; i < rest.size(); ++i )
      map[rest[i]] = z[i];
    append( c, blk.c, map );
    tally( r.mult, mark );
  }
  if ( !muxed.empty() )
  {
    mark = c.num_gates();
    emit_multiplexer( c, mux_stage::last, r.result, S, r.controls[muxed.back().index], 0 );
    tally( r.mux, mark );
  }
  r.shares_ancillae = p.shares_ancillae;
  return r;
}

/*! \brief True iff for every y < 2^l the result register holds b^y % M, controls are kept and all else is 0. */
inline bool verify_modexp( const modexp_circuit& m, uint64_t M, uint64_t b )
{
  std::vector<bool> is_io( m.c.width(), false );
  for ( auto l : m.controls )
    is_io[l] = true;
  for ( auto l : m.result )
    is_io[l] = true;
  bool ok = true;
  sweep(
      m.c, uint64_t{ 1 } << m.controls.size(),
      [&]( lanes& s, unsigned lane, uint64_t y ) { load_register( s, m.controls, lane, y ); },
      [&]( const lanes& out, unsigned lane, uint64_t y ) {
        if ( read_register( out, m.controls, lane ) != y || read_register( out, m.result, lane ) != modpow( b, y, M ) )
          ok = false;
        for ( uint32_t l = 0; l < m.c.width(); ++l )
          if ( !is_io[l] && ( ( out[l] >> lane ) & 1u ) )
            ok = false;
        return ok;
      } );
  return ok;
}

/* success rates */

struct srate_constraints
{
  uint64_t factor_bound = uint64_t{ 1 } << 13;
  bool balance = true;
};

struct srate_result
{
  uint64_t useful = 0;     /* moduli with a useful period */
  uint64_t considered = 0; /* denominator */
  uint64_t total = 0;      /* all enumerated moduli */

  double percent() const { return considered ? 100.0 * static_cast<double>( useful ) / static_cast<double>( considered ) : 0.0; }
  uint64_t failed() const { return considered - useful; }
};

/*! \brief Share of n-bit semiprimes for which base b has a useful period.

  Moduli sharing a factor with b, and moduli where b^(period/2) = -1, are
  left out of the denominator.
*/
inline srate_result success_rate( uint32_t n, uint64_t b, const srate_constraints& k = {} )
{
  srate_result r;
  for ( auto M : semiprimes( n, k.factor_bound, k.balance ) )
  {
    ++r.total;
    if ( std::gcd( b, M ) != 1 || b % M <= 1 )
      continue;
    auto p = multiplicative_order( b % M, M );
    if ( p.period % 2 == 0 && modpow( b, p.period / 2, M ) == M - 1 )
      continue;
    ++r.considered;
    if ( p.useful )
      ++r.useful;
  }
  return r;
}

/*! \brief Share of semiprimes for which at least one base of the set has a useful period; the denominator is all moduli. */
inline srate_result success_rate_any( uint32_t n, const std::vector<uint64_t>& bases, const srate_constraints& k = {} )
{
  srate_result r;
  for ( auto M : semiprimes( n, k.factor_bound, k.balance ) )
  {
    ++r.total;
    ++r.considered;
    for ( auto b : bases )
      if ( std::gcd( b, M ) == 1 && b % M > 1 && multiplicative_order( b % M, M ).useful )
      {
        ++r.useful;
        break;
      }
  }
  return r;
}

} // namespace revmod
