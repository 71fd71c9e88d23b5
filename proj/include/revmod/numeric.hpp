/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file numeric.hpp
  \brief Number-theoretic helpers: gcd, inverses, CSD, periods, semiprimes
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revmod
{

struct egcd_result
{
  int64_t g = 0;
  int64_t s = 0;
  int64_t t = 0;
};

/*! \brief Extended Euclid: g = s*a + t*b with g > 0. */
inline egcd_result egcd( int64_t a, int64_t b )
{
  if ( a == 0 && b == 0 )
    throw std::invalid_argument( "egcd(0, 0) is undefined" );
  int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while ( r1 != 0 )
  {
    int64_t q = r0 / r1;
    r0 = std::exchange( r1, r0 - q * r1 );
    s0 = std::exchange( s1, s0 - q * s1 );
    t0 = std::exchange( t1, t0 - q * t1 );
  }
  if ( r0 < 0 )
    return { -r0, -s0, -t0 };
  return { r0, s0, t0 };
}

inline int64_t modinv( int64_t C, int64_t M )
{
  if ( M < 2 )
    throw std::invalid_argument( "modulus must be at least 2" );
  auto [g, s, t] = egcd( ( ( C % M ) + M ) % M, M );
  if ( g != 1 )
    throw std::invalid_argument( std::to_string( C ) + " has no inverse modulo " + std::to_string( M ) );
  return ( ( s % M ) + M ) % M;
}

inline uint64_t modpow( uint64_t b, uint64_t e, uint64_t M )
{
  uint64_t r = 1 % M;
  b %= M;
  for ( ; e; e >>= 1, b = b * b % M )
    if ( e & 1u )
      r = r * b % M;
  return r;
}

/*! \brief Number of bits needed for residues mod M, i.e. ceil(log2 M). */
inline uint32_t ceil_log2( uint64_t M )
{
  return M <= 1 ? 0u : static_cast<uint32_t>( std::bit_width( M - 1 ) );
}

struct csd_digit
{
  uint32_t position = 0;
  int sign = 1;

  bool operator==( const csd_digit& ) const = default;
};

struct csd_expansion
{
  std::vector<csd_digit> digits;

  int64_t value() const
  {
    int64_t v = 0;
    for ( auto const& d : digits )
      v += d.sign * ( int64_t{ 1 } << d.position );
    return v;
  }
};

/*! \brief Canonical signed-digit form (non-adjacent form), low digits first. */
inline csd_expansion csd( int64_t C )
{
  if ( C < 1 )
    throw std::invalid_argument( "csd needs a positive integer" );
  csd_expansion e;
  for ( uint32_t pos = 0; C != 0; ++pos, C >>= 1 )
  {
    if ( C & 1 )
    {
      int sign = ( C & 3 ) == 3 ? -1 : 1;
      e.digits.push_back( { pos, sign } );
      C -= sign;
    }
  }
  return e;
}

struct period_info
{
  uint64_t base = 0;
  uint64_t modulus = 0;
  uint64_t period = 0;
  bool useful = false;
};

inline period_info multiplicative_order( uint64_t b, uint64_t M )
{
  if ( b <= 1 || b >= M || std::gcd( b, M ) != 1 )
    throw std::invalid_argument( "base " + std::to_string( b ) + " is not admissible for modulus " + std::to_string( M ) );
  period_info p{ b, M, 1, false };
  for ( uint64_t v = b; v != 1; v = v * b % M )
    ++p.period;
  p.useful = p.period % 2 == 0 && modpow( b, p.period / 2, M ) != M - 1;
  return p;
}

inline bool is_prime( uint64_t n )
{
  if ( n < 2 )
    return false;
  for ( uint64_t d = 2; d * d <= n; ++d )
    if ( n % d == 0 )
      return false;
  return true;
}

inline std::vector<uint64_t> primes_below( uint64_t bound )
{
  std::vector<bool> comp( bound, false );
  std::vector<uint64_t> ps;
  for ( uint64_t i = 2; i < bound; ++i )
  {
    if ( comp[i] )
      continue;
    ps.push_back( i );
    for ( uint64_t j = i * i; j < bound; j += i )
      comp[j] = true;
  }
  return ps;
}

/*! \brief n-bit products p*q of distinct primes p, q > 3 below `factor_bound`.

  With `balance`, the factor bit lengths differ by less than 2.
*/
inline std::vector<uint64_t> semiprimes( uint32_t n, uint64_t factor_bound, bool balance )
{
  if ( n < 4 )
    throw std::invalid_argument( "semiprimes needs n >= 4" );
  uint64_t lo = ( uint64_t{ 1 } << ( n - 1 ) ) + 1, hi = uint64_t{ 1 } << n;
  std::vector<uint64_t> out;
  auto ps = primes_below( std::min<uint64_t>( factor_bound, hi / 5 + 1 ) );
  for ( size_t i = 0; i < ps.size(); ++i )
  {
    if ( ps[i] <= 3 )
      continue;
    for ( size_t j = i + 1; j < ps.size() && ps[i] * ps[j] <= hi; ++j )
    {
      uint64_t M = ps[i] * ps[j];
      if ( M < lo )
        continue;
      if ( balance )
      {
        int64_t d = static_cast<int64_t>( ceil_log2( ps[i] ) ) - static_cast<int64_t>( ceil_log2( ps[j] ) );
        if ( d <= -2 || d >= 2 )
          continue;
      }
      out.push_back( M );
    }
  }
  std::sort( out.begin(), out.end() );
  return out;
}

inline uint64_t totient( uint64_t M )
{
  if ( M < 2 )
    throw std::invalid_argument( "totient needs M >= 2" );
  uint64_t r = M, m = M;
  for ( uint64_t p = 2; p * p <= m; ++p )
  {
    if ( m % p != 0 )
      continue;
    r -= r / p;
    while ( m % p == 0 )
      m /= p;
  }
  if ( m > 1 )
    r -= r / m;
  return r;
}

/*! \brief All 1 < C < M with gcd(C, M) = 1. */
inline std::vector<uint64_t> coprimes( uint64_t M )
{
  std::vector<uint64_t> out;
  for ( uint64_t C = 2; C < M; ++C )
    if ( std::gcd( C, M ) == 1 )
      out.push_back( C );
  return out;
}

} // namespace revmod
