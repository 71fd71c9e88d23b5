/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file modmult_21.cpp
  \brief Every multiplier modulo 21, with the method chosen and its cost
*/

#include <revmod/pathsynth.hpp>

#include <cstdio>

using namespace revmod;

int main()
{
  const uint64_t M = 21;
  auto table = dijkstra_all( M );
  std::printf( "%4s %-10s %5s %5s %4s  %s\n", "C", "method", "T", "CNOT", "A", "program" );
  for ( auto C : coprimes( M ) )
  {
    auto m = synth_mult( M, C, mult_method::automatic, &table );
    auto k = counts( m.blk.c );
    if ( !verify_modmult( m.blk.c, M, C ) )
    {
      std::fprintf( stderr, "C=%llu does not verify\n", static_cast<unsigned long long>( C ) );
      return 1;
    }
    std::printf( "%4llu %-10s %5llu %5llu %4llu  %s\n", static_cast<unsigned long long>( C ), m.method.c_str(),
                 static_cast<unsigned long long>( k.toffoli ), static_cast<unsigned long long>( k.cnot ),
                 static_cast<unsigned long long>( k.ancillae ), m.program.c_str() );
  }

  /* the doubling circuit in the text format */
  std::printf( "\n%s", to_text( synth_mult( M, 2, mult_method::automatic, &table ).blk.c ).c_str() );
  return 0;
}
