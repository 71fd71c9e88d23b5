/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file modexp_85.cpp
  \brief Builds and checks 2^y mod 85
*/

#include <revmod/modexp.hpp>

#include <cstdio>

using namespace revmod;

int main( int argc, char** argv )
{
  const uint64_t M = argc > 1 ? std::stoull( argv[1] ) : 85;
  const uint64_t b = select_base( M );
  auto period = multiplicative_order( b, M );
  const uint32_t l = select_controls( period.period );
  auto p = plan( M, b, l, dijkstra_cost_oracle( M ) );
  auto mc = assemble( p, default_mult_provider( M ) );

  std::printf( "M = %llu, base %llu, period %llu, %u controls\n", static_cast<unsigned long long>( M ),
               static_cast<unsigned long long>( b ), static_cast<unsigned long long>( period.period ), l );
  for ( auto const& m : p.multipliers )
    std::printf( "  control %u: x%llu%s (%s)\n", m.index, static_cast<unsigned long long>( m.implemented( M ) ), m.negated ? ", negated" : "",
                 m.place == placement::lut ? "table" : "multiplexed" );
  auto print = [&]( const char* name, const gate_counts& k ) {
    std::printf( "  %-9s T %4llu  CNOT %4llu\n", name, static_cast<unsigned long long>( k.toffoli ), static_cast<unsigned long long>( k.cnot ) );
  };
  print( "table", mc.lut_counts );
  print( "negation", mc.negation );
  print( "mult", mc.mult );
  print( "mux", mc.mux );
  auto k = counts( mc.c );
  std::printf( "total: T %llu, CNOT %llu, ancillae %llu\n", static_cast<unsigned long long>( k.toffoli ),
               static_cast<unsigned long long>( k.cnot ), static_cast<unsigned long long>( k.ancillae ) );

  const bool ok = verify_modexp( mc, M, b );
  std::printf( "verified over all %llu inputs: %s\n", static_cast<unsigned long long>( uint64_t{ 1 } << l ), ok ? "yes" : "no" );
  return ok ? 0 : 1;
}
