/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file refcosts.hpp
  \brief Closed-form gate counts of earlier modular multiplication and exponentiation circuits
*/

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace revmod
{

enum class reference_scheme
{
  beckman_worst,   /* mod-mult, worst case */
  beckman_avg,     /* mod-mult, average case */
  beckman_modexp,  /* mod-exp, average case */
  vedral,          /* mod-exp */
  vanmeter,        /* mod-exp */
  proposed_modexp  /* mod-exp built from unconditional multipliers */
};

inline constexpr std::array<std::pair<reference_scheme, std::string_view>, 6> reference_schemes{ {
    { reference_scheme::beckman_worst, "beckman-worst" },
    { reference_scheme::beckman_avg, "beckman-avg" },
    { reference_scheme::beckman_modexp, "beckman-modexp" },
    { reference_scheme::vedral, "vedral" },
    { reference_scheme::vanmeter, "vanmeter" },
    { reference_scheme::proposed_modexp, "proposed-modexp" },
} };

inline std::string_view scheme_name( reference_scheme s )
{
  for ( auto [k, v] : reference_schemes )
    if ( k == s )
      return v;
  return "?";
}

inline reference_scheme scheme_from_name( std::string_view name )
{
  for ( auto [k, v] : reference_schemes )
    if ( v == name )
      return k;
  throw std::invalid_argument( "unknown reference scheme '" + std::string( name ) + "'" );
}

struct reference_cost
{
  int64_t cnot = 0;
  int64_t toffoli = 0;

  bool operator==( const reference_cost& ) const = default;
};

/*! \brief Gate mix [NOT, CNOT, C2NOT, C3NOT], stored in quarters so that the average case stays exact. */
struct gate_mix
{
  std::array<int64_t, 4> q{};

  gate_mix operator+( const gate_mix& o ) const
  {
    gate_mix r;
    for ( size_t i = 0; i < 4; ++i )
      r.q[i] = q[i] + o.q[i];
    return r;
  }

  /*! \brief CNOTs and Toffolis, with a C3NOT counted as 3 Toffolis and NOTs dropped. */
  reference_cost costs() const
  {
    if ( q[1] % 4 || ( q[2] + 3 * q[3] ) % 4 )
      throw std::logic_error( "fractional gate count" );
    return { q[1] / 4, ( q[2] + 3 * q[3] ) / 4 };
  }
};

/* k * [c0, c1, c2, c3] with all quantities in quarters */
inline gate_mix scaled( int64_t k4, std::array<int64_t, 4> c4 )
{
  gate_mix r;
  for ( size_t i = 0; i < 4; ++i )
  {
    if ( ( k4 * c4[i] ) % 4 )
      throw std::logic_error( "fractional gate count" );
    r.q[i] = k4 * c4[i] / 4;
  }
  return r;
}

/*! \brief Term-by-term worst-case mix of the enable-bit mod-mult circuit. */
inline gate_mix beckman_worst_mix( int64_t n )
{
  const int64_t m = n - 1;
  auto q = []( int64_t v ) { return 4 * v; };
  return scaled( q( 4 * m * m ), { q( 2 ), q( 2 ), q( 2 ), q( 1 ) } ) +
         scaled( q( 4 * m ), { q( 2 ), q( 2 ), q( 1 ), 0 } ) +
         scaled( q( 8 * m ), { q( n ), q( 2 ), q( 2 * n - 3 ), 0 } ) +
         scaled( q( 4 * m ), { 0, 0, q( 1 ), 0 } ) +
         scaled( q( 2 * m ), { 0, q( 1 ), 0, 0 } ) +
         scaled( q( 2 ), { 0, q( n ), 0, 0 } ) +
         scaled( q( 2 ), { 0, q( 2 * n ), 0, 0 } );
}

/*! \brief Term-by-term average-case mix of the enable-bit mod-mult circuit. */
inline gate_mix beckman_avg_mix( int64_t n )
{
  const int64_t m = n - 1;
  auto q = []( int64_t v ) { return 4 * v; };
  return scaled( q( 4 * m * m ), { 2, 6, 6, 2 } ) +
         scaled( q( 4 * m ), { 2, 5, 2, 0 } ) +
         scaled( q( 8 * m ), { 4 * n - 2, 6, 6 * n - 10, 0 } ) +
         scaled( q( 4 * m ), { 0, 0, q( 1 ), 0 } ) +
         scaled( q( 2 * m ), { 0, q( 1 ), 0, 0 } ) +
         scaled( q( 2 ), { 0, 2 * n, 0, 0 } ) +
         scaled( q( 2 ), { 0, q( n ), 0, 0 } );
}

/*! \brief Closed-form (CNOT, Toffoli) counts at bit width n >= 5. */
inline reference_cost reference_costs( int64_t n, reference_scheme s )
{
  if ( n < 5 )
    throw std::invalid_argument( "reference costs need n >= 5" );
  const int64_t n2 = n * n, n3 = n2 * n;
  switch ( s )
  {
  case reference_scheme::beckman_worst:
    return { 8 * n2 + 16 * n - 18, 36 * n2 - 80 * n + 36 };
  case reference_scheme::beckman_avg:
    return { 6 * n2 - 16 * n + 13, 24 * n2 - 50 * n + 26 };
  case reference_scheme::beckman_modexp:
    return { 14 * n3 + 5 * n2 - 18 * n + 13, 46 * n3 - 107 * n2 + 92 * n - 25 };
  case reference_scheme::vedral:
    return { 96 * n3 - 84 * n2 + 15 * n, 80 * n3 - 100 * n2 + 20 * n };
  case reference_scheme::vanmeter:
    return { 40 * n3 - 70 * n2 + 15 * n, 60 * n3 - 75 * n2 + 15 * n };
  case reference_scheme::proposed_modexp:
    return { 6 * n3 - 39 * n2 + 76 * n - 62, 24 * n3 - 145 * n2 + 243 * n - 104 };
  }
  throw std::invalid_argument( "unknown reference scheme" );
}

/*! \brief Mod-exp built from 20n-Toffoli tables, n - 4 enable-bit multipliers and 2-to-2 multiplexers, summed stage by stage. */
inline reference_cost proposed_modexp_sum( int64_t n )
{
  const auto mult = reference_costs( n, reference_scheme::beckman_avg );
  reference_cost r;
  r.toffoli = 20 * n + ( n - 4 ) * mult.toffoli + 2 * n + ( n - 5 ) * n;
  r.cnot = ( n - 4 ) * mult.cnot + 2 * n + ( n - 5 ) * ( n + 2 );
  return r;
}

} // namespace revmod
