/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file cli_commands.hpp
  \brief Command implementations behind the revmod executable
*/

#pragma once

#include <revmod/modexp.hpp>
#include <revmod/refcosts.hpp>

#include <json.hpp>

#include <atomic>
#include <thread>

namespace revmod::cli
{

using json = nlohmann::json;

inline constexpr const char* report_schema = "revmod-report/1";
inline constexpr uint32_t max_scan_bits = 14;

/* exit codes */
enum exit_code : int
{
  ok = 0,
  verify_failed = 1,
  usage = 2,
  resource_limit = 3
};

/*! \brief Raised for requests beyond the supported sizes. */
class resource_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline mult_method method_from_name( const std::string& s )
{
  static const std::map<std::string, mult_method> names{ { "auto", mult_method::automatic }, { "dijkstra", mult_method::dijkstra },
                                                         { "divrem", mult_method::divrem },  { "binary", mult_method::binary },
                                                         { "csd", mult_method::csd },        { "bennett", mult_method::bennett } };
  auto it = names.find( s );
  if ( it == names.end() )
    throw std::invalid_argument( "unknown method '" + s + "'" );
  return it->second;
}

inline json cost_row( uint64_t M, uint64_t c_or_b, const gate_counts& k, const std::string& structure )
{
  return { { "modulus", M },           { "bits", ceil_log2( M ) }, { "multiplier_or_base", c_or_b }, { "t_cost", k.toffoli },
           { "cnot_cost", k.cnot },    { "ancillae", k.ancillae }, { "structure", structure } };
}

inline json counts_json( const gate_counts& k )
{
  return { { "t_cost", k.toffoli }, { "cnot_cost", k.cnot }, { "not_count", k.nots } };
}

inline json plan_json( const modexp_plan& p )
{
  json mults = json::array();
  for ( auto const& m : p.multipliers )
    mults.push_back( { { "i", m.index }, { "c", m.c }, { "negated", m.negated }, { "placement", m.place == placement::lut ? "lut" : "multiplexed" } } );
  return { { "modulus", p.modulus },
           { "base", p.base },
           { "controls", p.controls },
           { "multipliers", mults },
           { "lut", { { "inputs", p.lut_inputs }, { "values", p.lut_values } } },
           { "shares_ancillae", p.shares_ancillae } };
}

inline void require_modulus( uint64_t M )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "modulus must be odd and at least 3" );
  if ( M > op_search::max_modulus )
    throw resource_error( "modulus " + std::to_string( M ) + " exceeds the supported 15-bit range" );
}

/* synth mult */

struct mult_result
{
  mult_circuit m;
  json report;
};

inline mult_result synth_mult_cmd( uint64_t M, uint64_t C, const std::string& method )
{
  require_modulus( M );
  auto m = synth_mult( M, C, method_from_name( method ) );
  auto row = cost_row( M, C % M, counts( m.blk.c ), m.program.empty() ? m.method : m.method + ":" + m.program );
  return { std::move( m ), { { "schema", report_schema }, { "command", "synth mult" }, { "row", row } } };
}

/* synth exp */

/*! \brief "lut(k)" followed by one "xC" or "x-C" per multiplexed stage. */
inline std::string structure_string( const modexp_plan& p )
{
  std::string s = "lut(" + std::to_string( p.lut_inputs.size() ) + ")";
  for ( auto const& m : p.multipliers )
    if ( m.place == placement::multiplexed && m.implemented( p.modulus ) != 1 )
      s += m.negated ? " x-" + std::to_string( p.modulus - m.c ) : " x" + std::to_string( m.c );
  return s;
}

struct exp_result
{
  modexp_circuit mc;
  modexp_plan plan;
  json report;
};

inline exp_result synth_exp_cmd( uint64_t M, std::optional<uint64_t> base, std::optional<uint32_t> controls )
{
  require_modulus( M );
  const uint64_t b = base ? *base : select_base( M );
  auto period = multiplicative_order( b, M );
  const uint32_t l = controls ? *controls : select_controls( period.period );
  auto p = plan( M, b, l, dijkstra_cost_oracle( M ) );
  auto mc = assemble( p, default_mult_provider( M ) );
  if ( !verify_modexp( mc, M, b ) )
    throw std::logic_error( "assembled circuit failed verification" );
  json breakdown = { { "lut", counts_json( mc.lut_counts ) },
                     { "negation", counts_json( mc.negation ) },
                     { "mult", counts_json( mc.mult ) },
                     { "mux", counts_json( mc.mux ) } };
  json report = { { "schema", report_schema },
                  { "command", "synth exp" },
                  { "period", period.period },
                  { "useful_period", period.useful },
                  { "row", cost_row( M, b, counts( mc.c ), structure_string( p ) ) },
                  { "breakdown", breakdown },
                  { "plan", plan_json( p ) } };
  return { std::move( mc ), std::move( p ), std::move( report ) };
}

/* verify */

inline bool verify_mult_cmd( const circuit& c, uint64_t M, uint64_t C )
{
  auto layout = default_layout( c );
  if ( layout.data.size() != bit_width_of( M ) )
  {
    /* a circuit without lines is the identity */
    if ( c.width() == 0 )
      return C % M == 1;
    return false;
  }
  return verify_modmult( c, M, C, layout );
}

inline bool verify_exp_cmd( const circuit& c, uint64_t M, uint64_t b )
{
  modexp_circuit mc;
  mc.c = c;
  for ( uint32_t i = 0; i < c.width(); ++i )
  {
    if ( c.role( i ) == line_role::control )
      mc.controls.push_back( i );
    else if ( c.role( i ) == line_role::data )
      mc.result.push_back( i );
  }
  if ( mc.controls.empty() || mc.result.size() != bit_width_of( M ) )
    return false;
  return verify_modexp( mc, M, b );
}

/* scan */

template<typename Fn>
void parallel_for( size_t count, unsigned jobs, Fn&& fn )
{
  jobs = std::max( 1u, std::min<unsigned>( jobs, static_cast<unsigned>( count ) ) );
  if ( jobs == 1 )
  {
    for ( size_t i = 0; i < count; ++i )
      fn( i );
    return;
  }
  std::atomic<size_t> next{ 0 };
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for ( unsigned t = 0; t < jobs; ++t )
    pool.emplace_back( [&] {
      for ( size_t i = next++; i < count; i = next++ )
      {
        try
        {
          fn( i );
        }
        catch ( ... )
        {
          std::lock_guard lock( error_mutex );
          if ( !error )
            error = std::current_exception();
        }
      }
    } );
  for ( auto& t : pool )
    t.join();
  if ( error )
    std::rethrow_exception( error );
}

/*! \brief (cost, cumulative fraction) pairs, one per distinct cost. */
inline std::vector<std::pair<uint64_t, double>> cdf( std::vector<uint64_t> costs )
{
  std::sort( costs.begin(), costs.end() );
  std::vector<std::pair<uint64_t, double>> r;
  for ( size_t i = 0; i < costs.size(); ++i )
    if ( i + 1 == costs.size() || costs[i + 1] != costs[i] )
      r.emplace_back( costs[i], static_cast<double>( i + 1 ) / static_cast<double>( costs.size() ) );
  return r;
}

inline std::string cdf_csv( const std::vector<std::pair<uint64_t, double>>& points )
{
  std::ostringstream os;
  os << "cost,fraction\n";
  for ( auto [c, f] : points )
    os << c << ',' << f << '\n';
  return os.str();
}

struct scan_result
{
  json report;
  std::vector<uint64_t> costs;
};

struct scan_options
{
  uint64_t factor_bound = uint64_t{ 1 } << 13;
  bool balance = false;
  unsigned jobs = 1;
};

/*! \brief Operator-machine costs of every Cx % M, C != 1, over the n-bit semiprimes. */
inline scan_result scan_mult( uint32_t n, const scan_options& o = {} )
{
  if ( n > max_scan_bits )
    throw resource_error( "scan supports at most " + std::to_string( max_scan_bits ) + " bits" );
  auto moduli = semiprimes( n, o.factor_bound, o.balance );
  std::vector<std::vector<uint64_t>> per( moduli.size() );
  parallel_for( moduli.size(), o.jobs, [&]( size_t i ) {
    for ( auto const& e : dijkstra_all( moduli[i] ).entries )
      if ( e.C != 1 )
        per[i].push_back( e.cost );
  } );
  scan_result r;
  json rows = json::array();
  for ( size_t i = 0; i < moduli.size(); ++i )
  {
    auto const& v = per[i];
    if ( v.empty() )
      continue;
    double sum = std::accumulate( v.begin(), v.end(), 0.0 );
    rows.push_back( { { "modulus", moduli[i] }, { "min", *std::min_element( v.begin(), v.end() ) },
                      { "max", *std::max_element( v.begin(), v.end() ) }, { "avg", sum / static_cast<double>( v.size() ) } } );
    r.costs.insert( r.costs.end(), v.begin(), v.end() );
  }
  json summary = json::object();
  if ( !r.costs.empty() )
    summary = { { "min", *std::min_element( r.costs.begin(), r.costs.end() ) },
                { "max", *std::max_element( r.costs.begin(), r.costs.end() ) },
                { "avg", std::accumulate( r.costs.begin(), r.costs.end(), 0.0 ) / static_cast<double>( r.costs.size() ) },
                { "count", r.costs.size() } };
  r.report = { { "schema", report_schema }, { "command", "scan" }, { "kind", "mult" }, { "bits", n },
               { "moduli", moduli.size() }, { "summary", summary }, { "rows", rows } };
  return r;
}

/*! \brief Assembled mod-exp T-costs over the n-bit semiprimes with a useful prime base. */
inline scan_result scan_exp( uint32_t n, const scan_options& o = {} )
{
  if ( n > max_scan_bits )
    throw resource_error( "scan supports at most " + std::to_string( max_scan_bits ) + " bits" );
  auto moduli = semiprimes( n, o.factor_bound, o.balance );
  std::vector<std::optional<json>> rows_by( moduli.size() );
  std::vector<uint64_t> cost_by( moduli.size() );
  parallel_for( moduli.size(), o.jobs, [&]( size_t i ) {
    const uint64_t M = moduli[i];
    uint64_t b;
    try
    {
      b = select_base( M );
    }
    catch ( const std::runtime_error& )
    {
      return;
    }
    auto e = synth_exp_cmd( M, b, std::nullopt );
    cost_by[i] = counts( e.mc.c ).toffoli;
    rows_by[i] = e.report["row"];
    ( *rows_by[i] )["controls"] = e.plan.controls;
    ( *rows_by[i] )["shares_ancillae"] = e.plan.shares_ancillae;
  } );
  scan_result r;
  json rows = json::array();
  for ( size_t i = 0; i < moduli.size(); ++i )
    if ( rows_by[i] )
    {
      rows.push_back( *rows_by[i] );
      r.costs.push_back( cost_by[i] );
    }
  json summary = json::object();
  if ( !r.costs.empty() )
    summary = { { "min", *std::min_element( r.costs.begin(), r.costs.end() ) },
                { "max", *std::max_element( r.costs.begin(), r.costs.end() ) },
                { "avg", std::accumulate( r.costs.begin(), r.costs.end(), 0.0 ) / static_cast<double>( r.costs.size() ) },
                { "count", r.costs.size() } };
  r.report = { { "schema", report_schema }, { "command", "scan" }, { "kind", "exp" }, { "bits", n },
               { "moduli", moduli.size() }, { "summary", summary }, { "rows", rows } };
  return r;
}

/* period, srate, refcosts */

inline json period_cmd( uint64_t M, uint64_t b )
{
  auto p = multiplicative_order( b, M );
  return { { "schema", report_schema }, { "command", "period" }, { "modulus", M }, { "base", b }, { "period", p.period }, { "useful", p.useful } };
}

inline json srate_cmd( uint32_t n, const std::vector<uint64_t>& bases, const srate_constraints& k )
{
  json per = json::array();
  for ( auto b : bases )
  {
    auto r = success_rate( n, b, k );
    per.push_back( { { "base", b }, { "useful", r.useful }, { "considered", r.considered }, { "percent", r.percent() } } );
  }
  auto any = success_rate_any( n, bases, k );
  return { { "schema", report_schema },
           { "command", "srate" },
           { "bits", n },
           { "total", any.total },
           { "bases", per },
           { "any", { { "useful", any.useful }, { "percent", any.percent() } } } };
}

inline json refcosts_cmd( int64_t n )
{
  json rows = json::array();
  for ( auto [s, name] : reference_schemes )
  {
    auto c = reference_costs( n, s );
    rows.push_back( { { "scheme", name }, { "cnot", c.cnot }, { "toffoli", c.toffoli } } );
  }
  return { { "schema", report_schema }, { "command", "refcosts" }, { "bits", n }, { "rows", rows } };
}

} // namespace revmod::cli
