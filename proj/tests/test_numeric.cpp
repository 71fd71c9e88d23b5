/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

#include <catch2/catch_amalgamated.hpp>

#include <revmod/numeric.hpp>

#include "oracles.hpp"

using namespace revmod;

TEST_CASE( "egcd satisfies the Bezout identity", "[numeric]" )
{
  auto e = egcd( 1, 7 );
  CHECK( e.g == 1 );
  CHECK( e.s == 1 );
  CHECK( e.t == 0 );
  for ( int64_t a = -40; a <= 40; ++a )
    for ( int64_t b = -40; b <= 40; ++b )
    {
      if ( a == 0 && b == 0 )
        continue;
      auto r = egcd( a, b );
      REQUIRE( r.g == static_cast<int64_t>( oracle::gcd( std::abs( a ), std::abs( b ) ) ) );
      REQUIRE( r.s * a + r.t * b == r.g );
    }
  CHECK( egcd( 6, 35 ).g == 1 );
  CHECK_THROWS_AS( egcd( 0, 0 ), std::invalid_argument );
}

TEST_CASE( "modular inverses", "[numeric]" )
{
  CHECK( modinv( 1, 21 ) == 1 );
  CHECK( modinv( 2, 21 ) == 11 );
  CHECK( modinv( 3, 65 ) == 22 );
  for ( int64_t M = 3; M < 300; M += 2 )
    for ( int64_t C = 1; C < M; ++C )
    {
      if ( oracle::gcd( C, M ) != 1 )
      {
        REQUIRE_THROWS_AS( modinv( C, M ), std::invalid_argument );
        continue;
      }
      auto r = modinv( C, M );
      REQUIRE( r > 0 );
      REQUIRE( r < M );
      REQUIRE( r * C % M == 1 );
    }
}

TEST_CASE( "modpow and ceil_log2", "[numeric]" )
{
  for ( uint64_t M = 2; M < 100; ++M )
    for ( uint64_t b = 0; b < M; ++b )
      for ( uint64_t e = 0; e < 30; ++e )
        REQUIRE( modpow( b, e, M ) == oracle::powmod( b, e, M ) );
  CHECK( ceil_log2( 21 ) == 5 );
  CHECK( ceil_log2( 32 ) == 5 );
  CHECK( ceil_log2( 33 ) == 6 );
  for ( uint64_t M = 2; M < 5000; ++M )
    REQUIRE( ceil_log2( M ) == oracle::bits( M ) );
}

TEST_CASE( "csd of 39 is 32 + 8 - 1", "[numeric]" )
{
  auto e = csd( 39 );
  REQUIRE( e.digits.size() == 3 );
  CHECK( e.digits[0] == csd_digit{ 0, -1 } );
  CHECK( e.digits[1] == csd_digit{ 3, 1 } );
  CHECK( e.digits[2] == csd_digit{ 5, 1 } );
  CHECK( csd( 1 ).digits == std::vector<csd_digit>{ { 0, 1 } } );
  CHECK_THROWS_AS( csd( 0 ), std::invalid_argument );
}

TEST_CASE( "csd digits reconstruct, never touch and stay sparse", "[numeric]" )
{
  for ( int64_t C = 1; C <= ( int64_t{ 1 } << 20 ); ++C )
  {
    auto e = csd( C );
    REQUIRE( e.value() == C );
    for ( size_t i = 1; i < e.digits.size(); ++i )
      REQUIRE( e.digits[i].position >= e.digits[i - 1].position + 2 );
    REQUIRE( e.digits.size() <= ( std::bit_width( static_cast<uint64_t>( C ) ) + 2 ) / 2 );
  }
}

TEST_CASE( "periods", "[numeric]" )
{
  CHECK( multiplicative_order( 2, 85 ).period == 8 );
  CHECK( multiplicative_order( 2, 55 ).period == 20 );
  auto p = multiplicative_order( 2, 15 );
  CHECK( p.period == 4 );
  CHECK( p.useful );
  CHECK_THROWS_AS( multiplicative_order( 3, 15 ), std::invalid_argument );
  CHECK_THROWS_AS( multiplicative_order( 1, 15 ), std::invalid_argument );
  CHECK_THROWS_AS( multiplicative_order( 15, 15 ), std::invalid_argument );

  for ( uint64_t M = 5; M < 400; M += 2 )
    for ( uint64_t b = 2; b < M; ++b )
    {
      if ( oracle::gcd( b, M ) != 1 )
        continue;
      auto q = multiplicative_order( b, M );
      uint64_t pi = oracle::order( b, M );
      REQUIRE( q.period == pi );
      bool useful = pi % 2 == 0 && oracle::powmod( b, pi / 2, M ) != M - 1;
      REQUIRE( q.useful == useful );
    }
}

TEST_CASE( "primes", "[numeric]" )
{
  for ( uint64_t n = 0; n < 3000; ++n )
    REQUIRE( is_prime( n ) == oracle::prime( n ) );
  auto ps = primes_below( 30 );
  CHECK( ps == std::vector<uint64_t>{ 2, 3, 5, 7, 11, 13, 17, 19, 23, 29 } );
}

TEST_CASE( "semiprime enumeration", "[numeric]" )
{
  CHECK( semiprimes( 7, uint64_t{ 1 } << 13, true ) == std::vector<uint64_t>{ 65, 77, 91 } );
  CHECK( semiprimes( 7, uint64_t{ 1 } << 13, false ) == std::vector<uint64_t>{ 65, 77, 85, 91, 95, 115, 119 } );
  CHECK( semiprimes( 8, uint64_t{ 1 } << 13, true ) == std::vector<uint64_t>{ 143, 187, 209, 221, 247, 253 } );
  CHECK( semiprimes( 8, uint64_t{ 1 } << 13, false ).size() == 16 );
  CHECK( semiprimes( 10, uint64_t{ 1 } << 13, true ).size() == 20 );

  for ( uint32_t n = 4; n <= 12; ++n )
    for ( bool balance : { false, true } )
      REQUIRE( semiprimes( n, uint64_t{ 1 } << 13, balance ) == oracle::semiprimes( n, uint64_t{ 1 } << 13, balance ) );
  CHECK( semiprimes( 8, 20, false ) == oracle::semiprimes( 8, 20, false ) );
  CHECK_THROWS_AS( semiprimes( 3, 100, false ), std::invalid_argument );
}

TEST_CASE( "totient and coprimes", "[numeric]" )
{
  CHECK( totient( 15 ) == 8 );
  CHECK( totient( 21 ) == 12 );
  for ( uint64_t p : { 2, 3, 5, 7, 97, 8191 } )
    CHECK( totient( p ) == p - 1 );
  for ( uint64_t M = 2; M < 1000; ++M )
  {
    uint64_t count = 0;
    for ( uint64_t k = 1; k <= M; ++k )
      count += oracle::gcd( k, M ) == 1;
    REQUIRE( totient( M ) == count );
    REQUIRE( coprimes( M ).size() == count - 1 );
  }
  CHECK( coprimes( 15 ) == std::vector<uint64_t>{ 2, 4, 7, 8, 11, 13, 14 } );
}

TEST_CASE( "period identities over small semiprimes", "[numeric]" )
{
  for ( uint64_t M = 15; M <= 512; M += 2 )
  {
    bool semi = false;
    for ( uint64_t p = 3; p * p < M; ++p )
      if ( M % p == 0 )
      {
        semi = oracle::prime( p ) && oracle::prime( M / p ) && p != M / p;
        break;
      }
    if ( !semi )
      continue;
    for ( uint64_t b = 2; b < M; ++b )
    {
      if ( oracle::gcd( b, M ) != 1 )
        continue;
      const uint64_t pi = oracle::order( b, M );
      for ( uint64_t k = 1; k <= 16; ++k )
      {
        uint64_t bk = oracle::powmod( b, k, M );
        uint64_t pk = bk == 1 ? 1 : multiplicative_order( bk, M ).period;
        REQUIRE( pi == std::gcd( pi, k ) * pk );
      }
      if ( pi % 2 == 0 && oracle::powmod( b, pi / 2, M ) == M - 1 )
        for ( uint64_t k = 0; k <= 8; ++k )
        {
          uint64_t c = oracle::powmod( b, 2 * k + 1, M );
          uint64_t pc = oracle::order( c, M );
          REQUIRE( pc % 2 == 0 );
          REQUIRE( oracle::powmod( c, pc / 2, M ) == M - 1 );
        }
    }
  }
}
