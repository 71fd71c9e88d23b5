/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file multblocks.hpp
  \brief Multiplicative blocks: (2^k+1)x, -x % M, 2^k x % M, reductions
         modulo 2^k -+ 1, and multiplication through division with remainder
*/

#pragma once

#include "arith.hpp"

namespace revmod
{

namespace detail
{

/* constant pool of `n` lines plus a carry-in line, taken from shared scratch */
struct work_lines
{
  std::vector<uint32_t> pool;
  uint32_t c0;
};

inline work_lines work( netlist& nl, uint32_t n )
{
  auto s = nl.scratch( n + 1 );
  return { { s.begin(), s.begin() + n }, s[n] };
}

/* true iff the all-zero input is mapped to the all-zero output */
inline bool zero_fixed_point( const circuit& c )
{
  auto out = simulate_lanes( c, lanes( c.width(), 0 ) );
  return std::all_of( out.begin(), out.end(), []( uint64_t v ) { return ( v & 1u ) == 0; } );
}

inline block with_flag( block b )
{
  b.shares_ancillae = zero_fixed_point( b.c );
  return b;
}

} // namespace detail

/*! \brief In-place (2^k+1)x: the n-bit register x grows into the (n+k+1)-bit register y.

  y_i = x_i ^ x_{i-k} ^ c_i; the carries c_i are computed on ancillae from
  the bottom up and uncomputed from the top down while the sum bits are
  written.
*/
inline block mul_2k_plus_1( uint32_t n, uint32_t k )
{
  if ( k < 1 || k >= n )
    throw std::invalid_argument( "mul_2k_plus_1 needs 1 <= k < n" );
  detail::netlist nl;
  auto y = nl.lines( n, line_role::data );
  for ( auto l : nl.lines( k + 1, line_role::data ) )
    y.push_back( l );
  std::vector<uint32_t> x( y.begin(), y.begin() + n );
  auto xs = [&]( uint32_t i ) -> std::optional<uint32_t> {
    if ( i < n )
      return y[i];
    return std::nullopt;
  };

  /* carries c_{k+1} .. c_{n+k-1} */
  std::vector<uint32_t> carry( n + k + 1, 0 );
  for ( uint32_t i = k + 1; i + 1 <= n + k; ++i )
    carry[i] = nl.line( line_role::ancilla );

  /* CNOTs left for the two-Toffoli majority after the 2n-1 sum CNOTs */
  int64_t budget = 3 * static_cast<int64_t>( n ) - ( 2 * n - 1 );

  std::vector<bool> cheap( n + k + 1, false );
  auto compute = [&]( uint32_t i ) {
    /* c_i = maj(x_{i-1}, x_{i-1-k}, c_{i-1}) */
    auto a = xs( i - 1 );
    uint32_t b = y[i - 1 - k];
    if ( i - 1 == k )
    {
      nl.c.ccx( pos( *a ), pos( b ), carry[i] );
      return;
    }
    uint32_t cprev = carry[i - 1];
    if ( !a )
    {
      nl.c.ccx( pos( b ), pos( cprev ), carry[i] );
      return;
    }
    if ( cheap[i] )
    {
      nl.c.ccx( pos( b ), pos( cprev ), carry[i] );
      nl.c.cx( pos( b ), cprev );
      nl.c.ccx( pos( *a ), pos( cprev ), carry[i] );
      nl.c.cx( pos( b ), cprev );
    }
    else
    {
      nl.c.ccx( pos( *a ), pos( b ), carry[i] );
      nl.c.ccx( pos( *a ), pos( cprev ), carry[i] );
      nl.c.ccx( pos( b ), pos( cprev ), carry[i] );
    }
  };
  for ( uint32_t i = k + 1; i + 1 <= n + k; ++i )
  {
    if ( i - 1 != k && i - 1 < n && budget >= 4 )
    {
      cheap[i] = true;
      budget -= 4;
    }
    compute( i );
  }
  /* top bit: c_{n+k} = x_{n-1} c_{n+k-1} */
  nl.c.ccx( pos( x[n - 1] ), pos( carry[n + k - 1] ), y[n + k] );
  for ( uint32_t i = n + k - 1; i >= k + 1; --i )
  {
    if ( i - k < n )
      nl.c.cx( pos( y[i - k] ), y[i] );
    nl.c.cx( pos( carry[i] ), y[i] );
    compute( i );
  }
  nl.c.cx( pos( y[0] ), y[k] );
  return detail::with_flag( detail::finish( std::move( nl ), { { "x", x }, { "y", y } }, false ) );
}

/*! \brief x -> M - x for 0 < x <= M through (x + M')', where ' is the n-bit complement.

  Maps 0 to M. The controlled form turns every inverter into a CNOT from
  the control line.
*/
inline block neg_mod( uint64_t M, bool controlled )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "neg_mod needs an odd modulus >= 3" );
  const uint32_t n = ceil_log2( M );
  const uint64_t mc = ( ~M ) & detail::low_mask( n );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  std::map<std::string, std::vector<uint32_t>> regs{ { "x", x } };
  std::optional<uint32_t> ctl;
  if ( controlled )
  {
    ctl = nl.line( line_role::control );
    regs["ctrl"] = { *ctl };
  }
  auto a = nl.lines( n, line_role::ancilla );
  auto c0 = nl.line( line_role::ancilla );
  auto z = nl.line( line_role::ancilla );
  auto flip = [&]( uint32_t l ) {
    if ( ctl )
      nl.c.cx( pos( *ctl ), l );
    else
      nl.c.x( l );
  };
  for ( uint32_t i = 0; i < n; ++i )
    if ( ( mc >> i ) & 1u )
      flip( a[i] );
  detail::emit_adder( nl, a, x, c0, z, std::nullopt );
  for ( auto l : x )
    flip( l );
  for ( uint32_t i = 0; i < n; ++i )
    if ( ( mc >> i ) & 1u )
      flip( a[i] );
  return detail::with_flag( detail::finish( std::move( nl ), std::move( regs ), false ) );
}

/*! \brief Exact -x % M on [0, M), so that 0 stays 0.

  After neg_mod, the value M (from x = 0) is detected and cleared through
  one flag ancilla, and the flag is uncomputed by testing for 0.
*/
inline block neg_mod_exact( uint64_t M, bool controlled )
{
  auto base = neg_mod( M, controlled );
  const uint32_t n = ceil_log2( M );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  std::map<std::string, std::vector<uint32_t>> regs{ { "x", x } };
  std::map<std::string, std::vector<uint32_t>> bind{ { "x", x } };
  std::optional<uint32_t> ctl;
  if ( controlled )
  {
    ctl = nl.line( line_role::control );
    regs["ctrl"] = bind["ctrl"] = { *ctl };
  }
  auto f = nl.line( line_role::ancilla );
  detail::embed( nl, base, bind );
  std::vector<control> is_m, is_zero;
  for ( uint32_t i = 0; i < n; ++i )
  {
    is_m.push_back( { x[i], ( ( M >> i ) & 1u ) != 0 } );
    is_zero.push_back( neg( x[i] ) );
  }
  if ( ctl )
    is_zero.push_back( pos( *ctl ) );
  nl.c.mcx( is_m, f );
  for ( uint32_t i = 0; i < n; ++i )
    if ( ( M >> i ) & 1u )
      nl.c.cx( pos( f ), x[i] );
  nl.c.mcx( is_zero, f );
  return detail::with_flag( detail::finish( std::move( nl ), std::move( regs ), false ) );
}

/*! \brief x -> 2x % M for x < M.

  With h = (M+1)/2, the flag [x >= h] is computed and h subtracted when it
  is set; the result is flag + 2x', so the doubling is an output relabeling
  and the old top line, now 0, becomes the ancilla.
*/
inline block double_mod( uint64_t M )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "double_mod needs an odd modulus >= 3" );
  const uint32_t n = ceil_log2( M );
  const uint64_t h = ( M + 1 ) / 2;
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto flag = nl.line( line_role::ancilla );
  auto w = detail::work( nl, n );
  detail::emit_ge_const( nl, x, h, flag, w.pool, w.c0 );
  detail::emit_add_const( nl, x, ( uint64_t{ 1 } << n ) - h, pos( flag ), w.pool, w.c0 );
  auto b = detail::finish( std::move( nl ), { { "x", x }, { "flag", { flag } } } );

  auto const& xs = b.regs["x"];
  auto fl = b.regs["flag"][0];
  std::vector<uint32_t> p = b.c.relabel();
  p[xs[0]] = fl;
  for ( uint32_t j = 1; j < n; ++j )
    p[xs[j]] = xs[j - 1];
  p[fl] = xs[n - 1];
  b.c.set_relabel( std::move( p ) );
  b.regs.erase( "flag" );
  return detail::with_flag( std::move( b ) );
}

/*! \brief x -> 2^k x % M by chaining k doublings; rotations merge into one relabeling. */
inline block pow2_mod( uint64_t M, uint32_t k )
{
  if ( k < 1 )
    throw std::invalid_argument( "pow2_mod needs k >= 1" );
  auto d = double_mod( M );
  block r = d;
  for ( uint32_t i = 1; i < k; ++i )
    r.c = compose( r.c, d.c );
  return detail::with_flag( std::move( r ) );
}

enum class fold_sign
{
  minus, /* modulus 2^k - 1 */
  plus   /* modulus 2^k + 1 */
};

/*! \brief (x, 0) -> (x, x % m) with m = 2^k -+ 1 by folding base-2^k digits.

  Digits are added (minus case) or added and subtracted alternately (plus
  case) with register modular adders. For k > n the remainder is x itself.
*/
inline block reduce_mod_2k_pm1( uint32_t n, uint32_t k, fold_sign sign )
{
  if ( n < 1 || k < 1 || ( sign == fold_sign::minus && k < 2 ) || k > 30 )
    throw std::invalid_argument( "reduce_mod_2k_pm1: unsupported digit size" );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  if ( k > n )
    return detail::with_flag( detail::finish( std::move( nl ), { { "x", x }, { "r", x } }, false ) );

  const uint64_t m = sign == fold_sign::minus ? ( uint64_t{ 1 } << k ) - 1 : ( uint64_t{ 1 } << k ) + 1;
  const uint32_t rb = ceil_log2( m );
  auto r = nl.lines( rb, line_role::data );
  auto pad = nl.lines( rb, line_role::ancilla );
  auto add = mod_add( m );
  auto sub = add;
  sub.c = inverse( add.c );

  const uint32_t digits = ( n + k - 1 ) / k;
  for ( uint32_t j = 0; j < digits; ++j )
  {
    std::vector<uint32_t> d;
    for ( uint32_t i = 0; i < rb; ++i )
      d.push_back( i < k && j * k + i < n ? x[j * k + i] : pad[i] );
    if ( j == 0 && sign == fold_sign::plus )
    {
      for ( uint32_t i = 0; i < rb; ++i )
        if ( d[i] != pad[i] )
          nl.c.cx( pos( d[i] ), r[i] );
      continue;
    }
    bool subtract = sign == fold_sign::plus && j % 2 == 1;
    detail::embed( nl, subtract ? sub : add, { { "x", d }, { "y", r } } );
  }
  return detail::with_flag( detail::finish( std::move( nl ), { { "x", x }, { "r", r } }, false ) );
}

/*! \brief x -> 2^k x % M for M = 2^n - 1 - d with even d < 2^(n-k).

  Each doubling is a rotation by relabeling followed by adding d when the
  rotated-out bit was set and a single subtractive reduction; the reduction
  flag is cleared by testing y_0 AND NOT [y > d].
*/
inline block special_pow2_mod( uint64_t M, uint32_t k, uint64_t d )
{
  const uint64_t full = M + d + 1;
  if ( M < 3 || ( full & ( full - 1 ) ) != 0 )
    throw std::invalid_argument( "special_pow2_mod: M + d + 1 must be a power of two" );
  const uint32_t n = static_cast<uint32_t>( std::countr_zero( full ) );
  if ( d % 2 != 0 )
    throw std::invalid_argument( "special_pow2_mod: d must be even" );
  if ( k < 1 || k >= n || d >= ( uint64_t{ 1 } << ( n - k ) ) )
    throw std::invalid_argument( "special_pow2_mod: parameters outside d < 2^(n-k)" );

  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  std::vector<uint32_t> y = x;
  std::optional<uint32_t> g, t;
  if ( d != 0 )
  {
    g = nl.line( line_role::ancilla );
    t = nl.line( line_role::ancilla );
  }
  for ( uint32_t step = 0; step < k; ++step )
  {
    std::rotate( y.begin(), y.end() - 1, y.end() );
    if ( d == 0 )
      continue;
    auto w = detail::work( nl, n );
    std::vector<uint32_t> hi( y.begin() + 1, y.end() );
    detail::emit_add_const( nl, hi, d / 2, pos( y[0] ), w.pool, w.c0 );
    detail::emit_ge_const( nl, y, M, *g, w.pool, w.c0 );
    detail::emit_add_const( nl, y, ( uint64_t{ 1 } << n ) - M, pos( *g ), w.pool, w.c0 );
    detail::emit_ge_const( nl, y, d + 1, *t, w.pool, w.c0 );
    nl.c.ccx( pos( y[0] ), neg( *t ), *g );
    detail::emit_ge_const( nl, y, d + 1, *t, w.pool, w.c0 );
  }
  auto b = detail::finish( std::move( nl ), { { "x", x }, { "y", y } } );
  auto const& xs = b.regs["x"];
  auto const& ys = b.regs["y"];
  std::vector<uint32_t> p = b.c.relabel();
  for ( uint32_t j = 0; j < n; ++j )
    p[xs[j]] = ys[j];
  b.c.set_relabel( std::move( p ) );
  b.regs.erase( "y" );
  return detail::with_flag( std::move( b ) );
}

struct divrem_params_t
{
  uint64_t C = 0;
  uint64_t M = 0;
  uint64_t rho = 0;
  uint64_t delta = 0;
};

inline divrem_params_t divrem_params( uint64_t C, uint64_t M )
{
  if ( C <= 1 || C >= M || std::gcd( C, M ) != 1 )
    throw std::invalid_argument( "divrem_params needs gcd(C, M) = 1 and 1 < C < M" );
  return { C, M, ( M + C - 1 ) / C, C - M % C };
}

/*! \brief x -> (x / rho, x % rho) for x < M by subtractive reductions modulo 2^i rho.

  The remainder stays on the data lines, the quotient bits land on
  ceil(log2 C) fresh lines.
*/
inline block divrem( uint64_t M, uint64_t C )
{
  auto p = divrem_params( C, M );
  const uint32_t n = ceil_log2( M );
  const uint32_t nq = ceil_log2( C );
  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto q = nl.lines( nq, line_role::garbage );
  for ( uint32_t i = nq; i-- > 0; )
  {
    uint64_t v = p.rho << i;
    if ( v >= ( uint64_t{ 1 } << n ) )
      continue;
    auto w = detail::work( nl, n );
    detail::emit_ge_const( nl, x, v, q[i], w.pool, w.c0 );
    detail::emit_add_const( nl, x, ( uint64_t{ 1 } << n ) - v, pos( q[i] ), w.pool, w.c0 );
  }
  return detail::with_flag( detail::finish( std::move( nl ), { { "r", x }, { "q", q } } ) );
}

/*! \brief Cx % M for C = 2^k + 1 with C^2 < M, using Cx % M = (delta q + C r) % M.

  After one subtractive reduction, w = q + gamma equals (delta^-1 y) % C, so
  the quotient register is cleared with a table lookup on y % C, and gamma
  is cleared by the comparison y < delta w.
*/
inline block divrem_mult( uint64_t M, uint64_t C )
{
  auto prm = divrem_params( C, M );
  if ( C < 3 || ( ( C - 1 ) & ( C - 2 ) ) != 0 )
    throw std::invalid_argument( "divrem_mult needs C = 2^k + 1" );
  if ( C * C >= M )
    throw std::invalid_argument( "divrem_mult needs C^2 < M" );
  const uint32_t k = static_cast<uint32_t>( std::countr_zero( C - 1 ) );
  const uint32_t n = ceil_log2( M );
  const uint32_t nq = ceil_log2( C );
  const uint32_t nr = ceil_log2( prm.rho );
  const uint64_t delta = prm.delta;

  detail::netlist nl;
  auto x = nl.lines( n, line_role::data );
  auto q = nl.lines( nq, line_role::ancilla );
  auto z = nl.line( line_role::ancilla );
  auto g = nl.line( line_role::ancilla );
  auto yreg = x;
  yreg.push_back( z );

  /* 1. x -> (q, r) */
  detail::embed( nl, divrem( M, C ), { { "r", x }, { "q", q } } );

  /* 2. y = C r, in place on the low lines of x */
  {
    std::vector<uint32_t> ylines;
    for ( uint32_t i = 0; i < nr + k + 1; ++i )
      ylines.push_back( i < yreg.size() ? yreg[i] : nl.line( line_role::ancilla ) );
    std::vector<uint32_t> rl( ylines.begin(), ylines.begin() + nr );
    detail::embed( nl, mul_2k_plus_1( nr, k ), { { "x", rl }, { "y", ylines } } );
  }

  /* 3. y += delta q */
  auto pad = nl.lines( n + 1, line_role::ancilla );
  for ( uint32_t j = 0; j <= n; ++j )
  {
    if ( !( ( delta >> j ) & 1u ) )
      continue;
    std::vector<uint32_t> a, b( yreg.begin() + j, yreg.end() );
    for ( uint32_t i = 0; i < b.size(); ++i )
      a.push_back( i < nq ? q[i] : pad[i] );
    auto w = detail::work( nl, 0 );
    detail::emit_adder( nl, a, b, w.c0, std::nullopt, std::nullopt );
  }

  /* 4. one subtractive reduction over n + 1 bits clears z */
  {
    auto w = detail::work( nl, n + 1 );
    detail::emit_ge_const( nl, yreg, M, g, w.pool, w.c0 );
    detail::emit_add_const( nl, yreg, ( uint64_t{ 1 } << ( n + 1 ) ) - M, pos( g ), w.pool, w.c0 );
  }

  /* 5. w = q + gamma */
  {
    std::vector<uint32_t> a{ g };
    for ( uint32_t i = 1; i < nq; ++i )
      a.push_back( pad[i] );
    auto w = detail::work( nl, 0 );
    detail::emit_adder( nl, a, q, w.c0, std::nullopt, std::nullopt );
  }

  /* 6. gamma ^= [delta w > y], with delta w built by shift-adds and undone afterwards */
  {
    std::vector<uint32_t> v;
    const size_t start = nl.c.num_gates();
    if ( delta == 1 )
    {
      for ( uint32_t i = 0; i < n; ++i )
        v.push_back( i < nq ? q[i] : pad[i] );
    }
    else
    {
      v = nl.lines( n, line_role::ancilla );
      for ( uint32_t j = 0; j < n; ++j )
      {
        if ( !( ( delta >> j ) & 1u ) )
          continue;
        std::vector<uint32_t> a, b( v.begin() + j, v.end() );
        for ( uint32_t i = 0; i < b.size(); ++i )
          a.push_back( i < nq ? q[i] : pad[i] );
        auto w = detail::work( nl, 0 );
        detail::emit_adder( nl, a, b, w.c0, std::nullopt, std::nullopt );
      }
    }
    const size_t end = nl.c.num_gates();
    for ( auto l : x )
      nl.c.x( l );
    auto w = detail::work( nl, 0 );
    detail::emit_carry( nl, v, x, w.c0, g );
    for ( auto l : x )
      nl.c.x( l );
    for ( size_t i = end; i-- > start; )
    {
      gate gt = nl.c.gates()[i];
      nl.c.add_gate( std::move( gt ) );
    }
  }

  /* 7. u = y % C */
  auto fold = reduce_mod_2k_pm1( n, k, fold_sign::plus );
  auto u = nl.lines( k + 1, line_role::ancilla );
  detail::embed( nl, fold, { { "x", x }, { "r", u } } );

  /* 8. w ^= (delta^-1 u) % C */
  const uint64_t dinv = static_cast<uint64_t>( modinv( static_cast<int64_t>( delta % C ), static_cast<int64_t>( C ) ) );
  for ( uint64_t v = 1; v < C; ++v )
  {
    uint64_t tv = dinv * v % C;
    std::vector<control> cs;
    for ( uint32_t i = 0; i <= k; ++i )
      cs.push_back( { u[i], ( ( v >> i ) & 1u ) != 0 } );
    for ( uint32_t b = 0; b < nq; ++b )
      if ( ( tv >> b ) & 1u )
        nl.c.mcx( cs, q[b] );
  }

  /* 9. uncompute u */
  auto unfold = fold;
  unfold.c = inverse( fold.c );
  detail::embed( nl, unfold, { { "x", x }, { "r", u } } );

  return detail::with_flag( detail::finish( std::move( nl ), { { "x", x } } ) );
}

} // namespace revmod
