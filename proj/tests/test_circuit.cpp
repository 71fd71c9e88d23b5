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

circuit lines_of( uint32_t n, line_role r = line_role::data )
{
  return circuit( std::vector<line_role>( n, r ) );
}

/* random circuit over every gate kind, with a random relabeling */
circuit random_circuit( uint32_t width, uint32_t gates, std::mt19937_64& g )
{
  auto c = lines_of( width );
  std::uniform_int_distribution<uint32_t> line( 0, width - 1 ), kind( 0, 4 );
  while ( c.num_gates() < gates )
  {
    std::vector<uint32_t> ls( width );
    std::iota( ls.begin(), ls.end(), 0u );
    std::shuffle( ls.begin(), ls.end(), g );
    auto pol = [&] { return ( g() & 1u ) != 0; };
    switch ( kind( g ) )
    {
    case 0:
      c.add_gate( gate::mcx( {}, ls[0] ) );
      break;
    case 1:
      c.add_gate( gate::mcx( { { ls[1], pol() } }, ls[0] ) );
      break;
    case 2:
    {
      uint32_t k = 2 + static_cast<uint32_t>( g() % std::min<uint32_t>( 3, width - 2 ) );
      std::vector<control> cs;
      for ( uint32_t i = 1; i <= k; ++i )
        cs.push_back( { ls[i], pol() } );
      c.add_gate( gate::mcx( cs, ls[0] ) );
      break;
    }
    case 3:
      c.add_gate( gate::swap( ls[0], ls[1] ) );
      break;
    default:
      c.add_gate( gate::fredkin( { ls[2], pol() }, ls[0], ls[1] ) );
    }
  }
  std::vector<uint32_t> p( width );
  std::iota( p.begin(), p.end(), 0u );
  std::shuffle( p.begin(), p.end(), g );
  c.set_relabel( p );
  return c;
}

} // namespace

TEST_CASE( "single gates act as defined", "[circuit]" )
{
  auto c = lines_of( 2 );
  c.x( 0 );
  CHECK( simulate( c, { false, false } ) == std::vector<bool>{ true, false } );

  auto d = lines_of( 2 );
  d.cx( pos( 0 ), 1 );
  CHECK( simulate( d, { true, false } ) == std::vector<bool>{ true, true } );
  CHECK( simulate( d, { false, false } ) == std::vector<bool>{ false, false } );

  auto t = lines_of( 3 );
  t.ccx( pos( 0 ), neg( 1 ), 2 );
  CHECK( simulate_word( t, 0b001 ) == 0b101 );
  CHECK( simulate_word( t, 0b011 ) == 0b011 );

  auto f = lines_of( 3 );
  f.add_gate( gate::fredkin( pos( 0 ), 1, 2 ) );
  CHECK( simulate_word( f, 0b011 ) == 0b101 );
  CHECK( simulate_word( f, 0b010 ) == 0b010 );
}

TEST_CASE( "gates reject malformed line sets", "[circuit]" )
{
  auto c = lines_of( 3 );
  CHECK_THROWS_AS( c.add_gate( gate::mcx( { pos( 1 ) }, 1 ) ), std::invalid_argument );
  CHECK_THROWS_AS( c.add_gate( gate::mcx( { pos( 0 ) }, 3 ) ), std::out_of_range );
  CHECK_THROWS_AS( c.add_gate( gate::fredkin( pos( 0 ), 1, 1 ) ), std::invalid_argument );
  CHECK_THROWS_AS( simulate( c, { true } ), std::invalid_argument );
  CHECK_THROWS_AS( c.set_relabel( { 0, 0, 1 } ), std::invalid_argument );
}

TEST_CASE( "every gate kind is self-inverse", "[circuit]" )
{
  std::vector<gate> gs{ gate::mcx( {}, 0 ), gate::mcx( { neg( 1 ) }, 0 ), gate::mcx( { pos( 1 ), neg( 2 ), pos( 3 ) }, 0 ),
                        gate::swap( 0, 3 ), gate::fredkin( neg( 2 ), 0, 1 ) };
  for ( auto const& g : gs )
  {
    auto c = lines_of( 4 );
    c.add_gate( g );
    c.add_gate( g );
    for ( uint64_t v = 0; v < 16; ++v )
      CHECK( simulate_word( c, v ) == v );
  }
}

TEST_CASE( "costs expand multiple controls into 2k-3 Toffolis", "[circuit]" )
{
  auto c = lines_of( 6 );
  CHECK( counts( c ) == gate_counts{} );
  c.mcx( { pos( 0 ), pos( 1 ), pos( 2 ), pos( 3 ) }, 5 );
  CHECK( counts( c ).toffoli == 5 );
  auto d = lines_of( 6 );
  d.mcx( { pos( 0 ), neg( 1 ), pos( 2 ) }, 5 );
  CHECK( counts( d ).toffoli == 3 );

  auto e = lines_of( 3 );
  e.add_gate( gate::swap( 0, 1 ) );
  e.add_gate( gate::fredkin( pos( 2 ), 0, 1 ) );
  e.add_gate( gate::fredkin( pos( 2 ), 0, 1, true ) );
  auto k = counts( e );
  CHECK( k.toffoli == 2 );
  CHECK( k.cnot == 3 + 2 + 1 );
}

TEST_CASE( "ancilla count covers zero-initialized roles", "[circuit]" )
{
  circuit c( { line_role::data, line_role::ancilla, line_role::garbage, line_role::swap, line_role::control } );
  CHECK( counts( c ).ancillae == 3 );
}

TEST_CASE( "simulators agree and circuits are permutations", "[circuit]" )
{
  auto& g = oracle::rng();
  for ( int trial = 0; trial < 40; ++trial )
  {
    uint32_t w = 3 + trial % 8;
    auto c = random_circuit( w, 30, g );
    std::vector<bool> seen( uint64_t{ 1 } << w );
    for ( uint64_t v = 0; v < ( uint64_t{ 1 } << w ); ++v )
    {
      auto out = simulate_word( c, v );
      REQUIRE( out == oracle::run_word( c, v ) );
      REQUIRE_FALSE( seen[out] );
      seen[out] = true;
    }
  }
}

TEST_CASE( "inverse undoes a circuit", "[circuit]" )
{
  auto& g = oracle::rng();
  CHECK( inverse( lines_of( 0 ) ).num_gates() == 0 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    uint32_t w = 4 + trial % 9;
    auto c = random_circuit( w, 40, g );
    auto ci = inverse( c );
    auto id = compose( c, ci );
    for ( uint64_t v = 0; v < ( uint64_t{ 1 } << w ); ++v )
    {
      REQUIRE( simulate_word( ci, simulate_word( c, v ) ) == v );
      REQUIRE( simulate_word( id, v ) == v );
    }
  }
  auto big = random_circuit( 30, 200, g );
  auto bigi = inverse( big );
  for ( int i = 0; i < 1000; ++i )
  {
    uint64_t v = g() & ( ( uint64_t{ 1 } << 30 ) - 1 );
    REQUIRE( simulate_word( bigi, simulate_word( big, v ) ) == v );
  }
}

TEST_CASE( "inverse of 2x % 21 multiplies by 11", "[circuit]" )
{
  auto b = double_mod( 21 );
  auto inv = inverse( b.c );
  REQUIRE( verify_modmult( b.c, 21, 2 ) );
  CHECK( verify_modmult( inv, 21, 11 ) );
  CHECK_FALSE( verify_modmult( b.c, 21, 3 ) );
}

TEST_CASE( "2x % 21 maps 5 to 10 with clean ancillae", "[circuit]" )
{
  auto b = double_mod( 21 );
  auto r = oracle::run_with( b.c, { { b.reg( "x" ), 5 } } );
  CHECK( r.read( b.reg( "x" ) ) == 10 );
  CHECK( oracle::zero_except( b.c, r, { b.reg( "x" ) } ) );
}

TEST_CASE( "compose chains and adds costs", "[circuit]" )
{
  auto b = double_mod( 21 );
  auto four = compose( b.c, b.c );
  CHECK( verify_modmult( four, 21, 4 ) );
  auto k = counts( b.c ), k2 = counts( four );
  CHECK( k2.toffoli == 2 * k.toffoli );
  CHECK( k2.cnot == 2 * k.cnot );
  CHECK( k2.nots == 2 * k.nots );
  CHECK( k2.ancillae == k.ancillae );

  auto empty = circuit( b.c.roles() );
  auto same = compose( empty, b.c );
  CHECK( same.gates() == b.c.gates() );
  CHECK( same.relabel() == b.c.relabel() );
  CHECK_THROWS_AS( compose( lines_of( 2 ), lines_of( 3 ) ), std::invalid_argument );
}

TEST_CASE( "add_control enables a circuit", "[circuit]" )
{
  auto n = lines_of( 1 );
  n.x( 0 );
  auto cn = add_control( n, 1 );
  REQUIRE( cn.num_gates() == 1 );
  CHECK( cn.gates()[0].kind == gate_kind::cnot );
  CHECK( add_control( lines_of( 2 ), 2 ).num_gates() == 0 );

  auto b = double_mod( 21 );
  auto cb = add_control( b.c, b.c.width() );
  const uint32_t ctl = b.c.width();
  for ( uint64_t x = 0; x < 21; ++x )
    for ( uint64_t on = 0; on < 2; ++on )
    {
      auto r = oracle::run_with( cb, { { b.reg( "x" ), x }, { { ctl }, on } } );
      CHECK( r.read( b.reg( "x" ) ) == ( on ? 2 * x % 21 : x ) );
      CHECK( r.read( { ctl } ) == on );
      CHECK( oracle::zero_except( cb, r, { b.reg( "x" ), { ctl } } ) );
    }
  CHECK_THROWS_AS( add_control( b.c, b.reg( "x" )[0] ), std::invalid_argument );
}

TEST_CASE( "verify_modmult accepts identity and rejects wrong multipliers", "[circuit]" )
{
  auto id = lines_of( 5 );
  CHECK( verify_modmult( id, 21, 1 ) );
  CHECK_FALSE( verify_modmult( id, 21, 2 ) );
  CHECK_THROWS_AS( verify_modmult( lines_of( 4 ), 21, 1 ), std::invalid_argument );
}

TEST_CASE( "relabeling costs no gates", "[circuit]" )
{
  auto c = lines_of( 3 );
  c.add_gate( gate::swap( 0, 1 ) );
  c.add_gate( gate::swap( 1, 2 ) );
  auto r = swaps_to_relabel( c );
  CHECK( r.num_gates() == 0 );
  CHECK( counts( r ).cnot == 0 );
  for ( uint64_t v = 0; v < 8; ++v )
    CHECK( simulate_word( r, v ) == simulate_word( c, v ) );
}

TEST_CASE( "cnot triples merge into swaps", "[circuit]" )
{
  auto c = lines_of( 2 );
  c.cx( pos( 0 ), 1 );
  c.cx( pos( 1 ), 0 );
  c.cx( pos( 0 ), 1 );
  auto m = merge_cnot_swaps( c );
  REQUIRE( m.num_gates() == 1 );
  CHECK( m.gates()[0].kind == gate_kind::swap );
  for ( uint64_t v = 0; v < 4; ++v )
    CHECK( simulate_word( m, v ) == simulate_word( c, v ) );
}

TEST_CASE( "constant propagation keeps behaviour on zero ancillae", "[circuit]" )
{
  circuit c( { line_role::data, line_role::data, line_role::ancilla, line_role::ancilla } );
  c.x( 2 );                              /* ancilla 2 becomes a known 1 */
  c.ccx( pos( 0 ), pos( 2 ), 1 );        /* control on 2 can be dropped */
  c.ccx( pos( 0 ), pos( 3 ), 1 );        /* never fires */
  c.x( 2 );
  auto p = propagate_constants( c );
  CHECK( p.num_gates() == 1 );
  CHECK( counts( p ).toffoli == 0 );
  for ( uint64_t v = 0; v < 4; ++v )
    CHECK( simulate_word( p, v ) == simulate_word( c, v ) );
}

TEST_CASE( "idle ancillae are removed", "[circuit]" )
{
  circuit c( { line_role::data, line_role::ancilla, line_role::data, line_role::ancilla } );
  c.cx( pos( 0 ), 3 );
  c.cx( pos( 0 ), 3 );
  std::vector<int64_t> map;
  auto r = remove_idle_lines( c, &map );
  CHECK( r.width() == 3 );
  CHECK( map == std::vector<int64_t>{ 0, -1, 1, 2 } );
}

TEST_CASE( "text format round-trips byte for byte", "[circuit]" )
{
  auto& g = oracle::rng();
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto c = random_circuit( 6, 25, g );
    c.add_gate( gate::fredkin( neg( 0 ), 1, 2, true ) );
    auto text = to_text( c );
    auto back = parse_circuit( text );
    CHECK( to_text( back ) == text );
    CHECK( back.gates() == c.gates() );
    CHECK( back.relabel() == c.relabel() );
  }
  auto b = double_mod( 21 );
  CHECK( to_text( parse_circuit( to_text( b.c ) ) ) == to_text( b.c ) );
}

TEST_CASE( "parse errors carry line numbers", "[circuit]" )
{
  try
  {
    parse_circuit( "lines 3\nroles d d a\nn 0\nc +0 7\n" );
    FAIL( "expected a parse error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( e.line() == 4 );
  }
  CHECK_THROWS_AS( parse_circuit( "n 0\n" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "lines 2\nq 0 1\n" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "lines 2\nroles d x\n" ), parse_error );
  auto c = parse_circuit( "# comment\nlines 2\nn 1 # trailing\n" );
  CHECK( c.num_gates() == 1 );
}
