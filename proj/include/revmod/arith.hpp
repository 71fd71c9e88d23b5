/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file arith.hpp
  \brief Additive blocks: ripple-carry adders, constant adders, comparators
         and modular reductions

  Every constructor returns a `block`: a circuit plus named registers that
  list output positions, least significant bit first. Constant operands are
  written onto zero-initialized lines with inverters and then simplified by
  `propagate_constants`.
*/

#pragma once

#include "circuit.hpp"
#include "numeric.hpp"

#include <map>
#include <optional>
#include <string>

namespace revmod
{

struct block
{
  circuit c;
  std::map<std::string, std::vector<uint32_t>> regs;
  /* all-zero input maps to all-zero output, so ancillae may be shared */
  bool shares_ancillae = true;

  const std::vector<uint32_t>& reg( const std::string& name ) const
  {
    auto it = regs.find( name );
    if ( it == regs.end() )
      throw std::out_of_range( "block has no register '" + name + "'" );
    return it->second;
  }
};

namespace detail
{

/* circuit under construction with constant hints for the propagation pass */
struct netlist
{
  circuit c;
  std::vector<constant_hint> hints;

  std::vector<uint32_t> lines( uint32_t count, line_role r )
  {
    std::vector<uint32_t> v;
    for ( uint32_t i = 0; i < count; ++i )
      v.push_back( c.add_line( r ) );
    return v;
  }

  uint32_t line( line_role r ) { return c.add_line( r ); }

  /* zero-initialized lines shared by sub-blocks that clear their ancillae */
  std::vector<uint32_t> shared;

  std::vector<uint32_t> scratch( size_t count )
  {
    while ( shared.size() < count )
      shared.push_back( c.add_line( line_role::ancilla ) );
    return { shared.begin(), shared.begin() + count };
  }

  void hint( uint32_t p, bool value ) { hints.push_back( { c.num_gates(), c.line_at( p ), value } ); }

  /* known values of constant lines */
  std::map<uint32_t, int> known;

  void set_constant( std::span<const uint32_t> ls, uint64_t value )
  {
    for ( size_t i = 0; i < ls.size(); ++i )
    {
      bool bit = ( value >> i ) & 1u;
      if ( bit )
        c.x( ls[i] );
      known[ls[i]] = bit;
    }
  }

  void clear_constant( std::span<const uint32_t> ls, uint64_t value )
  {
    for ( size_t i = 0; i < ls.size(); ++i )
    {
      if ( ( value >> i ) & 1u )
        c.x( ls[i] );
      known[ls[i]] = 0;
    }
  }

  void restored( uint32_t p )
  {
    if ( auto it = known.find( p ); it != known.end() )
      hint( p, it->second );
  }
};

/* MAJ(c, x, k): k ends with the majority, the carry into the next stage */
inline void maj( netlist& nl, uint32_t cin, uint32_t x, uint32_t k, std::optional<control> ctrl )
{
  if ( ctrl )
    nl.c.ccx( *ctrl, pos( k ), x );
  else
    nl.c.cx( pos( k ), x );
  nl.c.cx( pos( k ), cin );
  nl.c.ccx( pos( cin ), pos( x ), k );
}

/* UMA(c, x, k): restores c and k, leaves the sum bit on x */
inline void uma( netlist& nl, uint32_t cin, uint32_t x, uint32_t k, std::optional<control> ctrl, bool first )
{
  nl.c.ccx( pos( cin ), pos( x ), k );
  nl.restored( k );
  nl.c.cx( pos( k ), cin );
  if ( first )
    nl.hint( cin, false );
  if ( ctrl )
    nl.c.ccx( *ctrl, pos( cin ), x );
  else
    nl.c.cx( pos( cin ), x );
}

/* inverse of MAJ without the sum step */
inline void maj_inv( netlist& nl, uint32_t cin, uint32_t x, uint32_t k, bool first )
{
  nl.c.ccx( pos( cin ), pos( x ), k );
  nl.restored( k );
  nl.c.cx( pos( k ), cin );
  if ( first )
    nl.hint( cin, false );
  nl.c.cx( pos( k ), x );
}

/*! b += a (mod 2^n, or into carry line z), optionally controlled. */
inline void emit_adder( netlist& nl, std::span<const uint32_t> a, std::span<const uint32_t> b, uint32_t c0,
                        std::optional<uint32_t> z, std::optional<control> ctrl )
{
  const size_t n = a.size();
  auto cin = [&]( size_t i ) { return i == 0 ? c0 : a[i - 1]; };
  const size_t stages = z ? n : n - 1;
  for ( size_t i = 0; i < stages; ++i )
    maj( nl, cin( i ), b[i], a[i], ctrl );
  if ( z )
  {
    if ( ctrl )
      nl.c.ccx( *ctrl, pos( a[n - 1] ), *z );
    else
      nl.c.cx( pos( a[n - 1] ), *z );
  }
  else
  {
    for ( auto src : { a[n - 1], cin( n - 1 ) } )
    {
      if ( ctrl )
        nl.c.ccx( *ctrl, pos( src ), b[n - 1] );
      else
        nl.c.cx( pos( src ), b[n - 1] );
    }
  }
  for ( size_t i = stages; i-- > 0; )
    uma( nl, cin( i ), b[i], a[i], ctrl, i == 0 );
}

/*! r ^= carry out of a + b, everything else restored. */
inline void emit_carry( netlist& nl, std::span<const uint32_t> a, std::span<const uint32_t> b, uint32_t c0, uint32_t r )
{
  const size_t n = a.size();
  auto cin = [&]( size_t i ) { return i == 0 ? c0 : a[i - 1]; };
  for ( size_t i = 0; i < n; ++i )
    maj( nl, cin( i ), b[i], a[i], std::nullopt );
  nl.c.cx( pos( a[n - 1] ), r );
  for ( size_t i = n; i-- > 0; )
    maj_inv( nl, cin( i ), b[i], a[i], i == 0 );
}

/*! r ^= [x >= K] using the constant pool (x.size() lines) and carry line c0. */
inline void emit_ge_const( netlist& nl, std::span<const uint32_t> x, uint64_t K, uint32_t r,
                           std::span<const uint32_t> pool, uint32_t c0 )
{
  const size_t n = x.size();
  if ( K == 0 )
  {
    nl.c.x( r );
    return;
  }
  if ( K >= ( uint64_t{ 1 } << n ) )
    return;
  /* x >= K  <=>  x + (2^n - K) carries out */
  uint64_t comp = ( uint64_t{ 1 } << n ) - K;
  auto p = pool.subspan( 0, n );
  nl.set_constant( p, comp );
  emit_carry( nl, p, x, c0, r );
  nl.clear_constant( p, comp );
}

/*! x += a (mod 2^n), optionally controlled, using the constant pool. */
inline void emit_add_const( netlist& nl, std::span<const uint32_t> x, uint64_t a, std::optional<control> ctrl,
                            std::span<const uint32_t> pool, uint32_t c0 )
{
  const size_t n = x.size();
  a &= ( n >= 64 ? ~uint64_t{ 0 } : ( uint64_t{ 1 } << n ) - 1 );
  if ( a == 0 )
    return;
  auto p = pool.subspan( 0, n );
  nl.set_constant( p, a );
  emit_adder( nl, p, x, c0, std::nullopt, ctrl );
  nl.clear_constant( p, a );
}

/*! Appends block `b`, binding its named registers to host positions.

  Unbound ancilla lines of the block go to shared scratch lines, unbound
  garbage lines get fresh host lines.
*/
inline void embed( netlist& nl, const block& b, const std::map<std::string, std::vector<uint32_t>>& bind )
{
  std::vector<int64_t> map( b.c.width(), -1 );
  for ( auto const& [name, ls] : bind )
  {
    auto const& r = b.reg( name );
    if ( r.size() != ls.size() )
      throw std::invalid_argument( "register '" + name + "' has " + std::to_string( r.size() ) + " lines, binding has " + std::to_string( ls.size() ) );
    for ( size_t i = 0; i < r.size(); ++i )
      map[r[i]] = ls[i];
  }
  size_t anc = 0;
  for ( uint32_t i = 0; i < b.c.width(); ++i )
    if ( map[i] < 0 && b.c.role( i ) == line_role::ancilla )
      ++anc;
  auto s = nl.scratch( anc );
  size_t next = 0;
  for ( uint32_t i = 0; i < b.c.width(); ++i )
  {
    if ( map[i] >= 0 )
      continue;
    if ( b.c.role( i ) == line_role::ancilla )
      map[i] = s[next++];
    else if ( b.c.role( i ) == line_role::garbage )
      map[i] = nl.line( line_role::garbage );
    else
      throw std::invalid_argument( "unbound non-ancilla line in embedded block" );
  }
  std::vector<uint32_t> m( map.begin(), map.end() );
  append( nl.c, b.c, m );
}

/*! Propagates constants, drops idle lines and remaps register positions. */
inline block finish( netlist&& nl, std::map<std::string, std::vector<uint32_t>> regs, bool simplify = true )
{
  block b;
  if ( !simplify )
  {
    b.c = std::move( nl.c );
    b.regs = std::move( regs );
    return b;
  }
  std::vector<int64_t> map;
  b.c = remove_idle_lines( propagate_constants( nl.c, std::move( nl.hints ) ), &map );
  for ( auto& [name, ls] : regs )
  {
    std::vector<uint32_t> v;
    for ( auto l : ls )
    {
      if ( map[l] < 0 )
        throw std::logic_error( "register '" + name + "' lost a line" );
      v.push_back( static_cast<uint32_t>( map[l] ) );
    }
    b.regs[name] = std::move( v );
  }
  return b;
}

inline uint64_t low_mask( uint32_t n ) { return n >= 64 ? ~uint64_t{ 0 } : ( uint64_t{ 1 } << n ) - 1; }

} // namespace detail

/*! \brief Ripple-carry adder (x, y) -> (x, x + y); the sum is y plus carry line z. */
inline block cuccaro_adder( uint32_t n )
{
  if ( n < 2 )
    throw std::invalid_argument( "cuccaro_adder needs n >= 2" );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto y = nl.lines( n, line_role::data );
  auto z = nl.line( line_role::data );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_adder( nl, x, y, c0, z, std::nullopt );
  auto sum = y;
  sum.push_back( z );
  return detail::finish( std::move( nl ), { { "x", x }, { "y", y }, { "sum", sum }, { "carry", { z } } }, false );
}

/*! \brief Adder enabled by a control line, built from controlled MAJ/UMA stages. */
inline block controlled_adder( uint32_t n )
{
  if ( n < 2 )
    throw std::invalid_argument( "controlled_adder needs n >= 2" );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto y = nl.lines( n, line_role::data );
  auto z = nl.line( line_role::data );
  auto ctl = nl.line( line_role::control );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_adder( nl, x, y, c0, z, pos( ctl ) );
  auto sum = y;
  sum.push_back( z );
  return detail::finish( std::move( nl ), { { "x", x }, { "y", y }, { "sum", sum }, { "carry", { z } }, { "ctrl", { ctl } } }, false );
}

/*! \brief x -> (x + a) mod 2^n; the controlled form adds only when `ctrl` is 1. */
inline block add_constant( uint32_t n, uint64_t a, bool controlled )
{
  if ( n < 2 || n > 62 )
    throw std::invalid_argument( "add_constant needs 2 <= n <= 62" );
  if ( a >= ( uint64_t{ 1 } << n ) )
    throw std::invalid_argument( "constant " + std::to_string( a ) + " does not fit in " + std::to_string( n ) + " bits" );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  std::map<std::string, std::vector<uint32_t>> regs{ { "x", x } };
  std::optional<control> ctl;
  if ( controlled )
  {
    auto l = nl.line( line_role::control );
    ctl = pos( l );
    regs["ctrl"] = { l };
  }
  auto pool = nl.lines( n, line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_add_const( nl, x, a, ctl, pool, c0 );
  return detail::finish( std::move( nl ), std::move( regs ) );
}

/*! \brief Computes [x > K] onto a result line and restores x. */
inline block comparator( uint32_t n, uint64_t K )
{
  if ( n < 2 || n > 62 )
    throw std::invalid_argument( "comparator needs 2 <= n <= 62" );
  if ( K >= ( uint64_t{ 1 } << n ) )
    throw std::invalid_argument( "comparison constant does not fit" );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto r = nl.line( line_role::garbage );
  auto pool = nl.lines( n, line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_ge_const( nl, x, K + 1, r, pool, c0 );
  return detail::finish( std::move( nl ), { { "x", x }, { "result", { r } } } );
}

/*! \brief x -> x % M for x < 2^n with n = ceil(log2 M); gamma = [x >= M] is left as garbage. */
inline block mod_reduce( uint64_t M )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "mod_reduce needs an odd modulus >= 3" );
  const uint32_t n = ceil_log2( M );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto g = nl.line( line_role::garbage );
  auto pool = nl.lines( n, line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_ge_const( nl, x, M, g, pool, c0 );
  detail::emit_add_const( nl, x, ( uint64_t{ 1 } << n ) - M, pos( g ), pool, c0 );
  return detail::finish( std::move( nl ), { { "x", x }, { "gamma", { g } } } );
}

/*! \brief Modular reduction enabled by line `sigma`.

  gamma still records [x >= M]; the subtraction is controlled by an extra
  ancilla e = gamma AND sigma, which is cleared afterwards.
*/
inline block controlled_mod_reduce( uint64_t M )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "controlled_mod_reduce needs an odd modulus >= 3" );
  const uint32_t n = ceil_log2( M );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto s = nl.line( line_role::control );
  auto g = nl.line( line_role::garbage );
  auto e = nl.line( line_role::ancilla );
  auto pool = nl.lines( n, line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_ge_const( nl, x, M, g, pool, c0 );
  nl.c.ccx( pos( g ), pos( s ), e );
  detail::emit_add_const( nl, x, ( uint64_t{ 1 } << n ) - M, pos( e ), pool, c0 );
  nl.c.ccx( pos( g ), pos( s ), e );
  return detail::finish( std::move( nl ), { { "x", x }, { "sigma", { s } }, { "gamma", { g } } } );
}

/*! \brief x -> (x + a) % M for x < M with every ancilla cleared. */
inline block cond_mod_add_const( uint64_t M, uint64_t a )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "cond_mod_add_const needs an odd modulus >= 3" );
  if ( a == 0 || a >= M )
    throw std::invalid_argument( "constant must satisfy 0 < a < M" );
  const uint32_t n = ceil_log2( M );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto g = nl.line( line_role::ancilla );
  auto pool = nl.lines( n, line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  detail::emit_ge_const( nl, x, M - a, g, pool, c0 );
  detail::emit_add_const( nl, x, a, std::nullopt, pool, c0 );
  detail::emit_add_const( nl, x, ( uint64_t{ 1 } << n ) - M, pos( g ), pool, c0 );
  /* the sum wrapped exactly when the result is below a */
  detail::emit_ge_const( nl, x, a, g, pool, c0 );
  nl.c.x( g );
  return detail::finish( std::move( nl ), { { "x", x } } );
}

/*! \brief Register modular addition (x, y) -> (x, (x + y) % M) for x, y < M.

  The inverse circuit performs (x, y) -> (x, (y - x) % M).
*/
inline block mod_add( uint64_t M )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "mod_add needs an odd modulus >= 3" );
  const uint32_t n = ceil_log2( M );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto y = nl.lines( n, line_role::data );
  auto z = nl.line( line_role::ancilla );
  auto g = nl.line( line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  auto pool = nl.lines( n + 1, line_role::ancilla );

  auto yz = y;
  yz.push_back( z );
  detail::emit_adder( nl, x, y, c0, z, std::nullopt );
  detail::emit_ge_const( nl, yz, M, g, pool, c0 );
  detail::emit_add_const( nl, yz, ( uint64_t{ 1 } << ( n + 1 ) ) - M, pos( g ), pool, c0 );
  /* gamma = [x > s]: carry out of x + ~s */
  for ( auto l : y )
    nl.c.x( l );
  detail::emit_carry( nl, x, y, c0, g );
  for ( auto l : y )
    nl.c.x( l );
  return detail::finish( std::move( nl ), { { "x", x }, { "y", y } } );
}

} // namespace revmod
