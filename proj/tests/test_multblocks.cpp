/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

#include <catch2/catch_amalgamated.hpp>

#include <revmod/multblocks.hpp>

#include "oracles.hpp"

using namespace revmod;

namespace
{

/* odd M in [lo, hi] */
std::vector<uint64_t> odd_moduli( uint64_t lo, uint64_t hi )
{
  std::vector<uint64_t> r;
  for ( uint64_t M = lo | 1u; M <= hi; M += 2 )
    r.push_back( M );
  return r;
}

bool zero_in_zero_out( const circuit& c )
{
  return oracle::run_word( c, 0 ) == 0;
}

} // namespace

TEST_CASE( "(2^k+1)x grows the register", "[multblocks]" )
{
  auto b = mul_2k_plus_1( 4, 1 );
  auto k = counts( b.c );
  CHECK( k.toffoli == 13 );
  CHECK( k.cnot == 11 );
  CHECK( k.ancillae == 3 );
  CHECK( oracle::run_with( b.c, { { b.reg( "x" ), 5 } } ).read( b.reg( "y" ) ) == 15 );
  auto b2 = mul_2k_plus_1( 5, 2 );
  CHECK( oracle::run_with( b2.c, { { b2.reg( "x" ), 13 } } ).read( b2.reg( "y" ) ) == 65 );

  for ( uint32_t n = 2; n <= 9; ++n )
    for ( uint32_t kk = 1; kk < n; ++kk )
    {
      auto m = mul_2k_plus_1( n, kk );
      REQUIRE( m.reg( "y" ).size() == n + kk + 1 );
      REQUIRE( counts( m.c ).toffoli <= 6 * n );
      REQUIRE( counts( m.c ).cnot <= 3 * n );
      REQUIRE( m.shares_ancillae );
      REQUIRE( zero_in_zero_out( m.c ) );
      for ( uint64_t x = 0; x < ( uint64_t{ 1 } << n ); ++x )
      {
        auto r = oracle::run_with( m.c, { { m.reg( "x" ), x } } );
        REQUIRE( r.read( m.reg( "y" ) ) == ( ( uint64_t{ 1 } << kk ) + 1 ) * x );
        REQUIRE( oracle::zero_except( m.c, r, { m.reg( "y" ) } ) );
      }
    }
  CHECK_THROWS_AS( mul_2k_plus_1( 4, 4 ), std::invalid_argument );
  CHECK_THROWS_AS( mul_2k_plus_1( 4, 0 ), std::invalid_argument );
}

TEST_CASE( "negation maps 0 to M", "[multblocks]" )
{
  auto b = neg_mod( 21, false );
  auto k = counts( b.c );
  CHECK( k.toffoli == 10 );
  CHECK( k.cnot == 21 );
  CHECK_FALSE( b.shares_ancillae );
  CHECK( oracle::run_with( b.c, { { b.reg( "x" ), 1 } } ).read( b.reg( "x" ) ) == 20 );
  CHECK( oracle::run_with( b.c, { { b.reg( "x" ), 21 } } ).read( b.reg( "x" ) ) == 0 );
  CHECK( oracle::run_with( b.c, { { b.reg( "x" ), 0 } } ).read( b.reg( "x" ) ) == 21 );

  for ( uint64_t M : odd_moduli( 3, 255 ) )
  {
    const uint32_t n = ceil_log2( M );
    auto nb = neg_mod( M, false );
    auto kn = counts( nb.c );
    REQUIRE( kn.toffoli == 2 * n );
    REQUIRE( kn.cnot == 4 * n + 1 );
    auto cb = neg_mod( M, true );
    for ( uint64_t x = 0; x <= M; ++x )
    {
      auto r = oracle::run_with( nb.c, { { nb.reg( "x" ), x } } );
      REQUIRE( r.read( nb.reg( "x" ) ) == M - x );
      REQUIRE( oracle::zero_except( nb.c, r, { nb.reg( "x" ) } ) );
      for ( uint64_t on = 0; on < 2; ++on )
      {
        auto s = oracle::run_with( cb.c, { { cb.reg( "x" ), x }, { cb.reg( "ctrl" ), on } } );
        REQUIRE( s.read( cb.reg( "x" ) ) == ( on ? M - x : x ) );
        REQUIRE( oracle::zero_except( cb.c, s, { cb.reg( "x" ), cb.reg( "ctrl" ) } ) );
      }
    }
  }
}

TEST_CASE( "exact negation keeps 0 fixed", "[multblocks]" )
{
  auto k = counts( neg_mod_exact( 21, false ).c );
  CHECK( k.toffoli == 24 );
  CHECK( k.cnot == 24 );
  for ( uint64_t M : odd_moduli( 3, 255 ) )
  {
    auto b = neg_mod_exact( M, false );
    REQUIRE( verify_modmult( b.c, M, M - 1 ) );
    REQUIRE( b.shares_ancillae );
    auto cb = neg_mod_exact( M, true );
    for ( uint64_t x = 0; x < M; ++x )
      for ( uint64_t on = 0; on < 2; ++on )
      {
        auto s = oracle::run_with( cb.c, { { cb.reg( "x" ), x }, { cb.reg( "ctrl" ), on } } );
        REQUIRE( s.read( cb.reg( "x" ) ) == ( on ? ( M - x ) % M : x ) );
        REQUIRE( oracle::zero_except( cb.c, s, { cb.reg( "x" ), cb.reg( "ctrl" ) } ) );
      }
  }
}

TEST_CASE( "doubling modulo 21", "[multblocks]" )
{
  auto b = double_mod( 21 );
  auto k = counts( b.c );
  /* published hand-tuned count: 15 T, 16 C, 4 A */
  CHECK( k.toffoli == 18 );
  CHECK( k.cnot == 8 );
  CHECK( k.ancillae == 6 );
  CHECK( verify_modmult( b.c, 21, 2 ) );
  auto m55 = double_mod( 55 );
  CHECK( oracle::run_with( m55.c, { { m55.reg( "x" ), 30 } } ).read( m55.reg( "x" ) ) == 5 );
}

TEST_CASE( "doubling for every odd modulus up to 255", "[multblocks]" )
{
  for ( uint64_t M : odd_moduli( 3, 255 ) )
  {
    auto b = double_mod( M );
    const uint32_t n = ceil_log2( M );
    REQUIRE( verify_modmult( b.c, M, 2 ) );
    REQUIRE( counts( b.c ).toffoli <= 5 * n - 7 );
    REQUIRE( b.shares_ancillae );
    REQUIRE( zero_in_zero_out( b.c ) );
    /* x = M comes out as M, which is 2M % M up to the representative */
    auto r = oracle::run_with( b.c, { { b.reg( "x" ), M } } );
    REQUIRE( r.read( b.reg( "x" ) ) % M == 0 );
  }
}

TEST_CASE( "powers of two chain doublings", "[multblocks]" )
{
  auto b = pow2_mod( 21, 2 );
  CHECK( counts( b.c ).toffoli == 36 );
  CHECK( counts( b.c ).cnot == 16 );
  auto b39 = pow2_mod( 39, 3 );
  CHECK( oracle::run_with( b39.c, { { b39.reg( "x" ), 10 } } ).read( b39.reg( "x" ) ) == 2 );

  for ( uint64_t M : odd_moduli( 3, 129 ) )
  {
    const uint64_t ord = oracle::order( 2, M );
    for ( uint32_t kk = 1; kk <= 5; ++kk )
    {
      auto p = pow2_mod( M, kk );
      REQUIRE( verify_modmult( p.c, M, oracle::powmod( 2, kk, M ) ) );
      REQUIRE( counts( p.c ).toffoli <= kk * counts( double_mod( M ).c ).toffoli );
      REQUIRE( p.shares_ancillae );
    }
    if ( ord <= 6 )
      REQUIRE( verify_modmult( pow2_mod( M, static_cast<uint32_t>( ord ) ).c, M, 1 ) );
  }
  CHECK_THROWS_AS( pow2_mod( 21, 0 ), std::invalid_argument );
}

TEST_CASE( "digit folding reduces modulo 2^k -+ 1", "[multblocks]" )
{
  auto empty = reduce_mod_2k_pm1( 3, 5, fold_sign::minus );
  CHECK( empty.c.num_gates() == 0 );
  auto k3 = reduce_mod_2k_pm1( 6, 2, fold_sign::minus );
  CHECK( oracle::run_with( k3.c, { { k3.reg( "x" ), 35 } } ).read( k3.reg( "r" ) ) == 2 );
  auto k5 = reduce_mod_2k_pm1( 6, 2, fold_sign::plus );
  CHECK( oracle::run_with( k5.c, { { k5.reg( "x" ), 37 } } ).read( k5.reg( "r" ) ) == 2 );

  auto m = counts( reduce_mod_2k_pm1( 6, 2, fold_sign::minus ).c );
  CHECK( m.toffoli == 48 );
  CHECK( m.cnot == 72 );
  auto p = counts( reduce_mod_2k_pm1( 6, 2, fold_sign::plus ).c );
  CHECK( p.toffoli == 50 );
  CHECK( p.cnot == 68 );

  for ( uint32_t n = 2; n <= 8; ++n )
    for ( uint32_t kk = 1; kk <= n + 1; ++kk )
      for ( auto sign : { fold_sign::minus, fold_sign::plus } )
      {
        if ( sign == fold_sign::minus && kk < 2 )
          continue;
        const uint64_t mod = sign == fold_sign::minus ? ( uint64_t{ 1 } << kk ) - 1 : ( uint64_t{ 1 } << kk ) + 1;
        auto b = reduce_mod_2k_pm1( n, kk, sign );
        REQUIRE( b.shares_ancillae );
        for ( uint64_t x = 0; x < ( uint64_t{ 1 } << n ); ++x )
        {
          auto r = oracle::run_with( b.c, { { b.reg( "x" ), x } } );
          REQUIRE( r.read( b.reg( "x" ) ) == x );
          REQUIRE( r.read( b.reg( "r" ) ) == x % mod );
          REQUIRE( oracle::zero_except( b.c, r, { b.reg( "x" ), b.reg( "r" ) } ) );
        }
      }
}

TEST_CASE( "special moduli 2^n - 1 - d", "[multblocks]" )
{
  auto rot = special_pow2_mod( 15, 1, 0 );
  CHECK( counts( rot.c ).toffoli == 0 );
  CHECK( counts( rot.c ).cnot == 0 );
  CHECK( verify_modmult( rot.c, 15, 2 ) );

  auto b = special_pow2_mod( 119, 1, 8 );
  CHECK( counts( b.c ).toffoli == 60 );
  CHECK( counts( b.c ).cnot == 16 );
  CHECK( oracle::run_with( b.c, { { b.reg( "x" ), 60 } } ).read( b.reg( "x" ) ) == 1 );
  CHECK( verify_modmult( b.c, 119, 2 ) );

  for ( uint32_t n = 3; n <= 8; ++n )
    for ( uint64_t d = 0; d < ( uint64_t{ 1 } << ( n - 1 ) ); d += 2 )
    {
      const uint64_t M = ( uint64_t{ 1 } << n ) - 1 - d;
      for ( uint32_t kk = 1; kk < n && d < ( uint64_t{ 1 } << ( n - kk ) ); ++kk )
      {
        if ( M < 3 )
          continue;
        auto s = special_pow2_mod( M, kk, d );
        REQUIRE( verify_modmult( s.c, M, oracle::powmod( 2, kk, M ) ) );
      }
    }
  /* 55 = 63 - 8 with 8 >= 2^(6-3) */
  CHECK_THROWS_AS( special_pow2_mod( 55, 3, 8 ), std::invalid_argument );
  CHECK_THROWS_AS( special_pow2_mod( 62, 1, 1 ), std::invalid_argument );
}

TEST_CASE( "division parameters", "[multblocks]" )
{
  auto p = divrem_params( 3, 35 );
  CHECK( p.rho == 12 );
  CHECK( p.delta == 1 );
  auto q = divrem_params( 5, 33 );
  CHECK( q.rho == 7 );
  CHECK( q.delta == 2 );
  for ( uint64_t M : odd_moduli( 3, 99 ) )
  {
    auto h = divrem_params( 2, M );
    REQUIRE( h.rho == ( M + 1 ) / 2 );
    REQUIRE( h.delta == 1 );
  }
  CHECK_THROWS_AS( divrem_params( 5, 35 ), std::invalid_argument );
  CHECK_THROWS_AS( divrem_params( 1, 35 ), std::invalid_argument );
}

TEST_CASE( "division identity holds without circuits", "[multblocks]" )
{
  for ( uint64_t M = 3; M <= 1000; M += 2 )
    for ( uint64_t C = 2; C < M; ++C )
    {
      if ( oracle::gcd( C, M ) != 1 )
        continue;
      auto p = divrem_params( C, M );
      REQUIRE( p.delta > 0 );
      REQUIRE( p.delta <= C );
      for ( uint64_t x = 0; x < M; x += ( M > 200 ? 37 : 1 ) )
      {
        const uint64_t v = p.delta * ( x / p.rho ) + C * ( x % p.rho );
        REQUIRE( v % M == C * x % M );
        if ( C * C < M )
          REQUIRE( v < 2 * M );
      }
    }
}

TEST_CASE( "division with remainder", "[multblocks]" )
{
  auto b = divrem( 35, 3 );
  CHECK( counts( b.c ).toffoli == 21 );
  CHECK( counts( b.c ).cnot == 15 );
  auto r = oracle::run_with( b.c, { { b.reg( "r" ), 30 } } );
  CHECK( r.read( b.reg( "q" ) ) == 2 );
  CHECK( r.read( b.reg( "r" ) ) == 6 );
  auto b5 = divrem( 33, 5 );
  auto r5 = oracle::run_with( b5.c, { { b5.reg( "r" ), 20 } } );
  CHECK( r5.read( b5.reg( "q" ) ) == 2 );
  CHECK( r5.read( b5.reg( "r" ) ) == 6 );

  for ( uint64_t M : odd_moduli( 5, 255 ) )
    for ( uint64_t C = 2; C < M; C += ( M > 100 ? 5 : 1 ) )
    {
      if ( oracle::gcd( C, M ) != 1 )
        continue;
      auto p = divrem_params( C, M );
      auto d = divrem( M, C );
      const uint32_t n = ceil_log2( M );
      REQUIRE( d.reg( "q" ).size() == ceil_log2( C ) );
      REQUIRE( counts( d.c ).toffoli <= ceil_log2( C ) * ( 5 * n - 7 ) );
      REQUIRE( d.shares_ancillae );
      for ( uint64_t x = 0; x < M; ++x )
      {
        auto s = oracle::run_with( d.c, { { d.reg( "r" ), x } } );
        REQUIRE( s.read( d.reg( "q" ) ) == x / p.rho );
        REQUIRE( s.read( d.reg( "r" ) ) == x % p.rho );
      }
    }
}

TEST_CASE( "multiplication through division with remainder", "[multblocks]" )
{
  auto b = divrem_mult( 35, 3 );
  auto k = counts( b.c );
  /* published hand-tuned count: 65 T */
  CHECK( k.toffoli == 248 );
  CHECK( k.cnot == 329 );
  CHECK( k.ancillae == 18 );
  CHECK( verify_modmult( b.c, 35, 3 ) );
  CHECK( b.shares_ancillae );
  CHECK( verify_modmult( divrem_mult( 33, 5 ).c, 33, 5 ) );

  for ( uint64_t M : odd_moduli( 11, 255 ) )
    for ( uint64_t C : { 3, 5, 9, 17 } )
    {
      if ( C * C >= M || oracle::gcd( C, M ) != 1 )
        continue;
      REQUIRE( verify_modmult( divrem_mult( M, C ).c, M, C ) );
    }
  CHECK_THROWS_AS( divrem_mult( 35, 4 ), std::invalid_argument );
  CHECK_THROWS_AS( divrem_mult( 21, 5 ), std::invalid_argument );
}
