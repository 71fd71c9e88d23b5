/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file revmod_cli.cpp
  \brief revmod command-line front end
*/

#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace revmod;
using namespace revmod::cli;

namespace
{

void write_file( const std::string& path, const std::string& text )
{
  std::ofstream os( path );
  if ( !os )
    throw std::runtime_error( "cannot write " + path );
  os << text;
}

std::string read_file( const std::string& path )
{
  std::ifstream is( path );
  if ( !is )
    throw std::runtime_error( "cannot read " + path );
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void emit( const json& j, const std::string& out )
{
  if ( out.empty() )
    std::cout << j.dump( 2 ) << '\n';
  else
    write_file( out, j.dump( 2 ) + '\n' );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "revmod: reversible circuits for modular multiplication and exponentiation" };
  app.require_subcommand( 1 );

  uint64_t modulus = 0, mult = 0, base = 0;
  uint32_t controls = 0, bits = 0;
  std::string method = "auto", out, kind = "mult", file, mode = "mult", cdf_out, bases_arg = "2,3,5";
  unsigned jobs = 1;
  uint64_t factor_bound = uint64_t{ 1 } << 13;
  bool balance = false;

  auto* synth = app.add_subcommand( "synth", "synthesize a verified circuit" );
  synth->require_subcommand( 1 );
  auto* smult = synth->add_subcommand( "mult", "Cx % M" );
  smult->add_option( "--modulus", modulus, "odd modulus M" )->required();
  smult->add_option( "--mult", mult, "constant C coprime with M" )->required();
  smult->add_option( "--method", method, "auto, dijkstra, divrem, binary, csd or bennett" );
  smult->add_option( "--out", out, "circuit file (report goes to stdout)" );

  auto* sexp = synth->add_subcommand( "exp", "b^y % M" );
  sexp->add_option( "--modulus", modulus, "odd semiprime M" )->required();
  auto* base_opt = sexp->add_option( "--base", base, "base b (default: first useful prime)" );
  auto* controls_opt = sexp->add_option( "--controls", controls, "control qubits (default: ceil(log2 period))" );
  sexp->add_option( "--out", out, "circuit file (report with plan goes to stdout)" );

  auto* verify = app.add_subcommand( "verify", "check a circuit file by exhaustive simulation" );
  verify->add_option( "file", file, "circuit file" )->required();
  verify->add_option( "--modulus", modulus, "modulus M" )->required();
  auto* vmult = verify->add_option( "--mult", mult, "expected multiplier C" );
  auto* vbase = verify->add_option( "--base", base, "expected base b" );
  vmult->excludes( vbase );

  auto* scan = app.add_subcommand( "scan", "costs over all n-bit semiprimes" );
  scan->add_option( "--bits", bits, "bit width n" )->required();
  scan->add_option( "--kind", kind, "mult or exp" )->check( CLI::IsMember( { "mult", "exp" } ) );
  scan->add_option( "--out", out, "JSON report file" );
  scan->add_option( "--cdf", cdf_out, "CSV file with the cost distribution" );
  scan->add_option( "--jobs", jobs, "worker threads" )->check( CLI::PositiveNumber );
  scan->add_option( "--factor-bound", factor_bound, "largest prime factor considered" );
  scan->add_flag( "--balance", balance, "only factors of similar size" );

  auto* period = app.add_subcommand( "period", "multiplicative order of b mod M" );
  period->add_option( "--modulus", modulus, "modulus M" )->required();
  period->add_option( "--base", base, "base b" )->required();

  auto* srate = app.add_subcommand( "srate", "share of n-bit semiprimes with a useful period" );
  srate->add_option( "--bits", bits, "bit width n" )->required();
  srate->add_option( "--base", bases_arg, "comma-separated bases" );
  srate->add_option( "--factor-bound", factor_bound, "largest prime factor considered" );

  auto* refcosts = app.add_subcommand( "refcosts", "closed-form costs of earlier constructions" );
  refcosts->add_option( "--bits", bits, "bit width n >= 5" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    int r = app.exit( e );
    return r == 0 ? exit_code::ok : exit_code::usage;
  }

  try
  {
    if ( smult->parsed() )
    {
      auto r = synth_mult_cmd( modulus, mult, method );
      if ( !out.empty() )
        write_file( out, to_text( r.m.blk.c ) );
      std::cout << r.report.dump( 2 ) << '\n';
    }
    else if ( sexp->parsed() )
    {
      std::optional<uint64_t> b;
      std::optional<uint32_t> l;
      if ( base_opt->count() )
        b = base;
      if ( controls_opt->count() )
        l = controls;
      auto r = synth_exp_cmd( modulus, b, l );
      if ( !out.empty() )
        write_file( out, to_text( r.mc.c ) );
      std::cout << r.report.dump( 2 ) << '\n';
    }
    else if ( verify->parsed() )
    {
      if ( !vmult->count() && !vbase->count() )
        throw CLI::RequiredError( "--mult or --base" );
      auto c = parse_circuit( read_file( file ) );
      bool pass = vmult->count() ? verify_mult_cmd( c, modulus, mult ) : verify_exp_cmd( c, modulus, base );
      std::cout << ( pass ? "pass" : "fail" ) << '\n';
      return pass ? exit_code::ok : exit_code::verify_failed;
    }
    else if ( scan->parsed() )
    {
      scan_options o{ factor_bound, balance, jobs };
      auto r = kind == "mult" ? scan_mult( bits, o ) : scan_exp( bits, o );
      emit( r.report, out );
      if ( !cdf_out.empty() )
        write_file( cdf_out, cdf_csv( cdf( r.costs ) ) );
    }
    else if ( period->parsed() )
    {
      std::cout << period_cmd( modulus, base ).dump( 2 ) << '\n';
    }
    else if ( srate->parsed() )
    {
      std::vector<uint64_t> bases;
      std::stringstream ss( bases_arg );
      for ( std::string tok; std::getline( ss, tok, ',' ); )
        bases.push_back( std::stoull( tok ) );
      std::cout << srate_cmd( bits, bases, { factor_bound, true } ).dump( 2 ) << '\n';
    }
    else if ( refcosts->parsed() )
    {
      std::cout << refcosts_cmd( bits ).dump( 2 ) << '\n';
    }
  }
  catch ( const CLI::Error& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  catch ( const resource_error& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::resource_limit;
  }
  catch ( const std::length_error& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::resource_limit;
  }
  catch ( const std::bad_alloc& )
  {
    std::cerr << "error: out of memory\n";
    return exit_code::resource_limit;
  }
  catch ( const parse_error& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  catch ( const std::invalid_argument& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::verify_failed;
  }
  return exit_code::ok;
}
