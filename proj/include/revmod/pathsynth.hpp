/* revmod: reversible circuits for modular arithmetic
 * Copyright (C) 2026  revmod contributors
 * Distributed under the MIT License. See accompanying file LICENSE.
 */

/*!
  \file pathsynth.hpp
  \brief Two-register operator machine and shortest-path synthesis of Cx % M

  A state (a, b) stands for register contents (ax % M, bx % M). Programs are
  strings of two-character operators such as "c2+2d1"; the first character
  names the action and the second the register it writes.
*/

#pragma once

#include "multblocks.hpp"

#include <array>
#include <functional>
#include <queue>

namespace revmod
{

enum class op_action : uint8_t
{
  add,    /* + */
  sub,    /* - */
  copy,   /* c */
  dbl,    /* d */
  fifth,  /* f */
  half,   /* h */
  triple, /* r */
  third,  /* t */
  quint,  /* v */
  negate  /* ~ */
};

inline constexpr std::array<char, 10> op_chars{ '+', '-', 'c', 'd', 'f', 'h', 'r', 't', 'v', '~' };

/* ops are numbered 2 * action + (reg - 1), which sorts like their text */
struct op_code
{
  op_action action = op_action::copy;
  uint8_t reg = 1;

  bool operator==( const op_code& ) const = default;

  constexpr uint8_t index() const { return static_cast<uint8_t>( 2 * static_cast<uint8_t>( action ) + reg - 1 ); }
  static constexpr op_code from_index( uint8_t i ) { return { static_cast<op_action>( i / 2 ), static_cast<uint8_t>( i % 2 + 1 ) }; }

  std::string str() const { return { op_chars[static_cast<size_t>( action )], static_cast<char>( '0' + reg ) }; }

  op_code inverted() const
  {
    switch ( action )
    {
    case op_action::add:
      return { op_action::sub, reg };
    case op_action::sub:
      return { op_action::add, reg };
    case op_action::dbl:
      return { op_action::half, reg };
    case op_action::half:
      return { op_action::dbl, reg };
    case op_action::triple:
      return { op_action::third, reg };
    case op_action::third:
      return { op_action::triple, reg };
    case op_action::quint:
      return { op_action::fifth, reg };
    case op_action::fifth:
      return { op_action::quint, reg };
    default:
      return *this;
    }
  }

  op_code exchanged() const { return { action, static_cast<uint8_t>( 3 - reg ) }; }
};

inline constexpr uint8_t num_ops = 20;

struct op_program
{
  std::vector<op_code> ops;

  bool operator==( const op_program& ) const = default;

  std::string str() const
  {
    std::string s;
    for ( auto const& o : ops )
      s += o.str();
    return s;
  }

  static op_program parse( const std::string& s )
  {
    if ( s.size() % 2 != 0 )
      throw std::invalid_argument( "operator string '" + s + "' has odd length" );
    op_program p;
    for ( size_t i = 0; i < s.size(); i += 2 )
    {
      auto it = std::find( op_chars.begin(), op_chars.end(), s[i] );
      if ( it == op_chars.end() )
        throw std::invalid_argument( "unknown operator '" + std::string( 1, s[i] ) + "' at position " + std::to_string( i ) );
      if ( s[i + 1] != '1' && s[i + 1] != '2' )
        throw std::invalid_argument( "register must be 1 or 2 at position " + std::to_string( i + 1 ) );
      p.ops.push_back( { static_cast<op_action>( it - op_chars.begin() ), static_cast<uint8_t>( s[i + 1] - '0' ) } );
    }
    return p;
  }

  /*! \brief Runs the program backwards. */
  op_program inverted() const
  {
    op_program r;
    for ( auto it = ops.rbegin(); it != ops.rend(); ++it )
      r.ops.push_back( it->inverted() );
    return r;
  }

  /*! \brief Swaps the roles of the two registers. */
  op_program exchanged() const
  {
    op_program r;
    for ( auto const& o : ops )
      r.ops.push_back( o.exchanged() );
    return r;
  }

  op_program operator+( const op_program& o ) const
  {
    op_program r = *this;
    r.ops.insert( r.ops.end(), o.ops.begin(), o.ops.end() );
    return r;
  }
};

struct two_reg_state
{
  uint64_t a = 1;
  uint64_t b = 0;

  bool operator==( const two_reg_state& ) const = default;
};

/*! \brief T-cost of an operator on n-bit registers. */
inline uint32_t op_cost( op_code o, uint32_t n )
{
  if ( n < 2 )
    throw std::invalid_argument( "op_cost needs n >= 2" );
  switch ( o.action )
  {
  case op_action::copy:
    return 0;
  case op_action::negate:
  case op_action::add:
  case op_action::sub:
    return 2 * n;
  case op_action::dbl:
  case op_action::half:
    return 5 * n - 7;
  case op_action::triple:
  case op_action::third:
    return 33 * n - 35;
  case op_action::quint:
  case op_action::fifth:
    return 38 * n - 42;
  }
  return 0;
}

/*! \brief Modulus with the inverses the operators need. */
class op_machine
{
public:
  explicit op_machine( uint64_t M ) : M_( M )
  {
    if ( M < 3 )
      throw std::invalid_argument( "operator machine needs M >= 3" );
    inv2_ = M % 2 ? static_cast<uint64_t>( modinv( 2, M ) ) : 0;
    inv3_ = M % 3 ? static_cast<uint64_t>( modinv( 3, M ) ) : 0;
    inv5_ = M % 5 ? static_cast<uint64_t>( modinv( 5, M ) ) : 0;
  }

  uint64_t modulus() const { return M_; }

  /*! \brief Whether an operator is available at all for this modulus. */
  bool enabled( op_action a ) const
  {
    switch ( a )
    {
    case op_action::dbl:
    case op_action::half:
      return inv2_ != 0;
    case op_action::triple:
    case op_action::third:
      return inv3_ != 0;
    case op_action::quint:
    case op_action::fifth:
      return inv5_ != 0;
    default:
      return true;
    }
  }

  std::optional<two_reg_state> apply( two_reg_state s, op_code o ) const
  {
    if ( !enabled( o.action ) )
      return std::nullopt;
    uint64_t& mine = o.reg == 1 ? s.a : s.b;
    uint64_t other = o.reg == 1 ? s.b : s.a;
    switch ( o.action )
    {
    case op_action::copy:
      if ( mine == 0 && other != 0 )
        mine = other;
      else if ( mine == other && mine != 0 )
        mine = 0;
      else if ( other != 0 )
        return std::nullopt;
      /* XOR with an all-zero register leaves the state alone */
      break;
    case op_action::negate:
      mine = ( M_ - mine ) % M_;
      break;
    case op_action::add:
      mine = ( mine + other ) % M_;
      break;
    case op_action::sub:
      mine = ( mine + M_ - other ) % M_;
      break;
    case op_action::dbl:
      mine = 2 * mine % M_;
      break;
    case op_action::half:
      mine = mine * inv2_ % M_;
      break;
    case op_action::triple:
      mine = 3 * mine % M_;
      break;
    case op_action::third:
      mine = mine * inv3_ % M_;
      break;
    case op_action::quint:
      mine = 5 * mine % M_;
      break;
    case op_action::fifth:
      mine = mine * inv5_ % M_;
      break;
    }
    return s;
  }

private:
  uint64_t M_;
  uint64_t inv2_ = 0, inv3_ = 0, inv5_ = 0;
};

inline two_reg_state apply_op( two_reg_state s, op_code o, uint64_t M )
{
  if ( s.a >= M || s.b >= M )
    throw std::invalid_argument( "state out of range" );
  auto r = op_machine( M ).apply( s, o );
  if ( !r )
    throw std::invalid_argument( "operator " + o.str() + " is not applicable to (" + std::to_string( s.a ) + "," + std::to_string( s.b ) + ") mod " + std::to_string( M ) );
  return *r;
}

inline two_reg_state eval_program( const op_program& p, uint64_t M, two_reg_state start = {} )
{
  op_machine mach( M );
  auto s = start;
  for ( size_t i = 0; i < p.ops.size(); ++i )
  {
    auto r = mach.apply( s, p.ops[i] );
    if ( !r )
      throw std::invalid_argument( "operator " + p.ops[i].str() + " at step " + std::to_string( i ) + " is not applicable" );
    s = *r;
  }
  return s;
}

inline uint64_t program_cost( const op_program& p, uint32_t n )
{
  uint64_t c = 0;
  for ( auto const& o : p.ops )
    c += op_cost( o, n );
  return c;
}

/* shortest-path search */

using op_mask = uint32_t;
inline constexpr op_mask all_ops = ( 1u << num_ops ) - 1;

/*! \brief Operators {c, ~, +, -, d, h} on both registers. */
inline constexpr op_mask basic_ops = [] {
  op_mask m = 0;
  for ( auto a : { op_action::copy, op_action::negate, op_action::add, op_action::sub, op_action::dbl, op_action::half } )
    for ( uint8_t r = 1; r <= 2; ++r )
      m |= 1u << op_code{ a, r }.index();
  return m;
}();

struct synth_entry
{
  uint64_t C = 0;
  uint32_t cost = 0;
  op_program program;
};

struct synth_result
{
  uint64_t M = 0;
  uint32_t n = 0;
  std::vector<synth_entry> entries; /* one per C coprime with M, increasing C */

  const synth_entry& at( uint64_t C ) const
  {
    auto it = std::lower_bound( entries.begin(), entries.end(), C, []( const synth_entry& e, uint64_t c ) { return e.C < c; } );
    if ( it == entries.end() || it->C != C )
      throw std::out_of_range( "no entry for C = " + std::to_string( C ) );
    return *it;
  }
};

/*! \brief Dijkstra over the M x M state array from (1, 0).

  Keys are (cost, program length); equal keys keep the lexicographically
  smallest program. Only the last operator of each best path is stored and
  predecessors are recovered by applying its inverse.
*/
class op_search
{
public:
  static constexpr uint64_t max_modulus = uint64_t{ 1 } << 15;

  op_search( uint64_t M, op_mask mask = all_ops ) : mach_( M ), M_( M ), n_( ceil_log2( M ) ), mask_( mask )
  {
    if ( M > max_modulus )
      throw std::length_error( "modulus " + std::to_string( M ) + " exceeds the search limit 2^15" );
    if ( M % 2 == 0 )
      throw std::invalid_argument( "operator search needs an odd modulus" );
    for ( uint8_t i = 0; i < num_ops; ++i )
    {
      auto o = op_code::from_index( i );
      if ( ( mask_ >> i ) & 1u && mach_.enabled( o.action ) )
        active_.push_back( o );
      cost_of_[i] = static_cast<uint16_t>( op_cost( o, std::max( n_, 2u ) ) );
    }
    const size_t N = static_cast<size_t>( M ) * M;
    cost_.assign( N, unreached );
    len_.assign( N, 0 );
    op_.assign( N, none );
    done_.assign( N, false );
  }

  /*! \brief Settles states until `stop` returns true for a settled state, or all are settled. */
  void run( const std::function<bool( two_reg_state )>& stop = {} )
  {
    using item = uint64_t;
    std::priority_queue<item, std::vector<item>, std::greater<item>> pq;
    auto key = []( uint64_t cost, uint64_t len, uint64_t idx ) { return ( cost << 42 ) | ( len << 34 ) | idx; };
    const uint64_t src = index( { 1 % M_, 0 } );
    cost_[src] = 0;
    pq.push( key( 0, 0, src ) );
    while ( !pq.empty() )
    {
      auto top = pq.top();
      pq.pop();
      uint64_t idx = top & ( ( uint64_t{ 1 } << 34 ) - 1 );
      if ( done_[idx] )
        continue;
      done_[idx] = true;
      auto s = state( idx );
      if ( stop && stop( s ) )
        return;
      for ( auto const& o : active_ )
      {
        auto t = mach_.apply( s, o );
        if ( !t )
          continue;
        uint64_t j = index( *t );
        if ( done_[j] )
          continue;
        uint32_t nc = cost_[idx] + cost_of_[o.index()];
        uint32_t nl = len_[idx] + 1u;
        if ( nl > 255 )
          throw std::overflow_error( "program length exceeds 255" );
        bool better = nc < cost_[j] || ( nc == cost_[j] && nl < len_[j] );
        if ( !better && nc == cost_[j] && nl == len_[j] )
          better = lex_less( idx, o, j );
        if ( better )
        {
          if ( nc >= unreached )
            throw std::overflow_error( "path cost exceeds 16 bits" );
          cost_[j] = static_cast<uint16_t>( nc );
          len_[j] = static_cast<uint8_t>( nl );
          op_[j] = o.index();
          pq.push( key( nc, nl, j ) );
        }
      }
    }
  }

  bool reached( two_reg_state s ) const { return cost_[index( s )] != unreached; }
  uint32_t cost( two_reg_state s ) const { return cost_[index( s )]; }

  op_program program( two_reg_state s ) const
  {
    op_program p;
    p.ops = path( index( s ) );
    return p;
  }

  uint64_t modulus() const { return M_; }

private:
  static constexpr uint16_t unreached = 0xFFFF;
  static constexpr uint8_t none = 0xFF;

  uint64_t index( two_reg_state s ) const { return s.a * M_ + s.b; }
  two_reg_state state( uint64_t i ) const { return { i / M_, i % M_ }; }

  std::vector<op_code> path( uint64_t idx ) const
  {
    std::vector<op_code> ops;
    while ( op_[idx] != none )
    {
      auto o = op_code::from_index( op_[idx] );
      ops.push_back( o );
      idx = index( *mach_.apply( state( idx ), o.inverted() ) );
    }
    std::reverse( ops.begin(), ops.end() );
    return ops;
  }

  /* is path(u) + o smaller than the current best path to j? */
  bool lex_less( uint64_t u, op_code o, uint64_t j ) const
  {
    auto a = path( u );
    a.push_back( o );
    auto b = path( j );
    return std::lexicographical_compare( a.begin(), a.end(), b.begin(), b.end(),
                                         []( op_code x, op_code y ) { return x.index() < y.index(); } );
  }

  op_machine mach_;
  uint64_t M_;
  uint32_t n_;
  op_mask mask_;
  std::vector<op_code> active_;
  std::array<uint16_t, num_ops> cost_of_{};
  std::vector<uint16_t> cost_;
  std::vector<uint8_t> len_;
  std::vector<uint8_t> op_;
  std::vector<bool> done_;
};

/*! \brief Minimum-cost programs (x, 0) -> (Cx % M, 0) for every C coprime with M. */
inline synth_result dijkstra_all( uint64_t M, op_mask mask = all_ops )
{
  op_search search( M, mask );
  search.run();
  synth_result r;
  r.M = M;
  r.n = ceil_log2( M );
  for ( uint64_t C = 1; C < M; ++C )
  {
    if ( std::gcd( C, M ) != 1 || !search.reached( { C, 0 } ) )
      continue;
    r.entries.push_back( { C, search.cost( { C, 0 } ), search.program( { C, 0 } ) } );
  }
  return r;
}

/*! \brief Single-target search that stops once (C, 0) is settled. */
inline synth_entry shortest_program( uint64_t M, uint64_t C, op_mask mask = all_ops )
{
  op_search search( M, mask );
  const two_reg_state target{ C % M, 0 };
  search.run( [&]( two_reg_state s ) { return s == target; } );
  if ( !search.reached( target ) )
    throw std::invalid_argument( "no program reaches " + std::to_string( C ) + " mod " + std::to_string( M ) );
  return { C, search.cost( target ), search.program( target ) };
}

/*! \brief Shift-and-add program (x, 0) -> (x, Cx % M) from the binary digits of C. */
inline op_program binary_expansion_program( uint64_t C, uint64_t M )
{
  if ( C == 0 || C >= M )
    throw std::invalid_argument( "binary expansion needs 0 < C < M" );
  op_program p;
  const op_code add{ op_action::add, 2 }, dbl{ op_action::dbl, 2 };
  for ( int i = static_cast<int>( std::bit_width( C ) ) - 1; i >= 0; --i )
  {
    if ( !p.ops.empty() )
      p.ops.push_back( dbl );
    if ( ( C >> i ) & 1u )
      p.ops.push_back( add );
  }
  return p;
}

/*! \brief Like the binary expansion, but adds and subtracts along the CSD digits of C. */
inline op_program csd_expansion_program( uint64_t C, uint64_t M )
{
  if ( C == 0 || C >= M )
    throw std::invalid_argument( "CSD expansion needs 0 < C < M" );
  auto e = csd( static_cast<int64_t>( C ) );
  op_program p;
  const op_code add{ op_action::add, 2 }, sub{ op_action::sub, 2 }, dbl{ op_action::dbl, 2 };
  auto const& ds = e.digits;
  for ( size_t k = ds.size(); k-- > 0; )
  {
    if ( k + 1 < ds.size() )
      for ( uint32_t i = ds[k].position; i < ds[k + 1].position; ++i )
        p.ops.push_back( dbl );
    p.ops.push_back( ds[k].sign > 0 ? add : sub );
  }
  for ( uint32_t i = 0; i < ds.front().position; ++i )
    p.ops.push_back( dbl );
  return p;
}

enum class expansion
{
  binary,
  csd
};

/*! \brief (x, 0) -> (Cx % M, 0): expand C, clear x with the inverse expansion of C^-1, move the result. */
inline op_program bennett_compose( uint64_t C, uint64_t M, expansion kind = expansion::csd )
{
  if ( std::gcd( C, M ) != 1 )
    throw std::invalid_argument( "bennett_compose needs gcd(C, M) = 1" );
  C %= M;
  if ( C == 1 )
    return {};
  auto build = [&]( uint64_t c ) { return kind == expansion::binary ? binary_expansion_program( c, M ) : csd_expansion_program( c, M ); };
  auto fwd = build( C );
  auto back = build( static_cast<uint64_t>( modinv( static_cast<int64_t>( C ), static_cast<int64_t>( M ) ) ) ).exchanged().inverted();
  return fwd + back + op_program::parse( "c1c2" );
}

/* gate-level expansion */

namespace detail
{

inline op_program scaled_subprogram( uint64_t M, uint64_t factor )
{
  return shortest_program( M, factor, basic_ops ).program;
}

inline void expand_program( netlist& nl, const op_program& p, uint64_t M, const std::vector<uint32_t>& r1,
                            const std::vector<uint32_t>& r2, std::map<char, block>& cache )
{
  auto get = [&]( char key, auto&& make ) -> const block& {
    auto it = cache.find( key );
    if ( it == cache.end() )
      it = cache.emplace( key, make() ).first;
    return it->second;
  };
  const uint32_t n = ceil_log2( M );
  for ( auto const& o : p.ops )
  {
    auto const& mine = o.reg == 1 ? r1 : r2;
    auto const& other = o.reg == 1 ? r2 : r1;
    switch ( o.action )
    {
    case op_action::copy:
      for ( uint32_t i = 0; i < n; ++i )
        nl.c.cx( pos( other[i] ), mine[i] );
      break;
    case op_action::negate:
      embed( nl, get( '~', [&] { return neg_mod_exact( M, false ); } ), { { "x", mine } } );
      break;
    case op_action::add:
      embed( nl, get( '+', [&] { return mod_add( M ); } ), { { "x", other }, { "y", mine } } );
      break;
    case op_action::sub:
      embed( nl, get( '-', [&] { auto b = mod_add( M ); b.c = inverse( b.c ); return b; } ), { { "x", other }, { "y", mine } } );
      break;
    case op_action::dbl:
      embed( nl, get( 'd', [&] { return double_mod( M ); } ), { { "x", mine } } );
      break;
    case op_action::half:
      embed( nl, get( 'h', [&] { auto b = double_mod( M ); b.c = inverse( b.c ); return b; } ), { { "x", mine } } );
      break;
    default:
    {
      /* x3, x5 and their inverses run a basic-operator program against a scratch register */
      const bool three = o.action == op_action::triple || o.action == op_action::third;
      const bool inv = o.action == op_action::third || o.action == op_action::fifth;
      char key = three ? ( inv ? 't' : 'r' ) : ( inv ? 'f' : 'v' );
      auto const& b = get( key, [&] {
        netlist sub;
        auto a = sub.lines( n, line_role::data );
        auto s = sub.lines( n, line_role::ancilla );
        std::map<char, block> inner;
        expand_program( sub, scaled_subprogram( M, three ? 3 : 5 ), M, a, s, inner );
        auto blk = finish( std::move( sub ), { { "x", a } }, false );
        if ( inv )
          blk.c = inverse( blk.c );
        return blk;
      } );
      embed( nl, b, { { "x", mine } } );
    }
    }
  }
}

} // namespace detail

/*! \brief Gate-level circuit for a program over register 1 (data) and register 2 (zero in and out). */
inline block program_to_circuit( const op_program& p, uint64_t M )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "program_to_circuit needs an odd modulus >= 3" );
  auto end = eval_program( p, M, { 1, 0 } );
  if ( end.b != 0 )
    throw std::invalid_argument( "program does not end with an empty register 2" );
  const uint32_t n = ceil_log2( M );
  detail::netlist nl;
  auto r1 = nl.lines( n, line_role::data );
  auto r2 = nl.lines( n, line_role::ancilla );
  std::map<char, block> cache;
  detail::expand_program( nl, p, M, r1, r2, cache );
  auto b = detail::finish( std::move( nl ), { { "x", r1 } } );
  return detail::with_flag( std::move( b ) );
}

/* multiplier synthesis front end */

enum class mult_method
{
  automatic,
  dijkstra,
  divrem,
  binary,
  csd,
  bennett
};

struct mult_circuit
{
  block blk;
  std::string method;
  std::string program; /* operator string when one was used */
};

/*! \brief Verified Cx % M circuit; `automatic` keeps the candidate with the fewest Toffolis.

  With `need_fixed_point`, only circuits mapping the all-zero state to itself
  are accepted (required behind multiplexers).
*/
inline mult_circuit synth_mult( uint64_t M, uint64_t C, mult_method method = mult_method::automatic,
                                const synth_result* table = nullptr, bool need_fixed_point = false )
{
  if ( M < 3 || M % 2 == 0 )
    throw std::invalid_argument( "synth_mult needs an odd modulus >= 3" );
  if ( std::gcd( C, M ) != 1 )
    throw std::invalid_argument( std::to_string( C ) + " is not coprime with " + std::to_string( M ) );
  C %= M;
  const uint32_t n = ceil_log2( M );
  std::vector<mult_circuit> cands;

  auto from_program = [&]( const op_program& p, const char* name ) {
    cands.push_back( { program_to_circuit( p, M ), name, p.str() } );
  };

  if ( C == 1 )
  {
    detail::netlist nl;
    auto x = nl.lines( n, line_role::data );
    cands.push_back( { detail::finish( std::move( nl ), { { "x", x } }, false ), "identity", "" } );
  }
  else
  {
    auto want = [&]( mult_method m ) { return method == m || method == mult_method::automatic; };
    if ( want( mult_method::dijkstra ) && M <= 4096 )
    {
      op_program p = table ? table->at( C ).program : shortest_program( M, C ).program;
      from_program( p, "dijkstra" );
    }
    if ( want( mult_method::binary ) || want( mult_method::bennett ) )
      from_program( bennett_compose( C, M, expansion::binary ), "binary" );
    if ( want( mult_method::csd ) || ( method == mult_method::bennett ) )
      from_program( bennett_compose( C, M, expansion::csd ), "csd" );
    if ( want( mult_method::divrem ) )
    {
      bool family = C >= 3 && ( ( C - 1 ) & ( C - 2 ) ) == 0 && C * C < M;
      if ( family )
        cands.push_back( { divrem_mult( M, C ), "divrem", "" } );
      else if ( method == mult_method::divrem )
        throw std::invalid_argument( "divrem needs C = 2^k + 1 with C^2 < M" );
    }
    if ( method == mult_method::automatic )
    {
      for ( uint32_t k = 1; k < 2 * n + 2 && k < 64; ++k )
        if ( modpow( 2, k, M ) == C )
        {
          cands.push_back( { pow2_mod( M, k ), "pow2", "" } );
          const uint64_t d = ( uint64_t{ 1 } << n ) - 1 - M;
          if ( d % 2 == 0 && k < n && d < ( uint64_t{ 1 } << ( n - k ) ) )
            cands.push_back( { special_pow2_mod( M, k, d ), "special", "" } );
          break;
        }
      if ( C == M - 1 )
        cands.push_back( { neg_mod_exact( M, false ), "negate", "" } );
    }
  }
  if ( cands.empty() )
    throw std::invalid_argument( "no synthesis method applies" );

  auto tcost = [&]( const mult_circuit& m ) { return counts( m.blk.c ).toffoli; };
  std::stable_sort( cands.begin(), cands.end(), [&]( auto const& a, auto const& b ) { return tcost( a ) < tcost( b ); } );
  for ( auto& m : cands )
  {
    if ( need_fixed_point && !m.blk.shares_ancillae )
      continue;
    register_layout layout{ m.blk.reg( "x" ), {} };
    for ( uint32_t i = 0; i < m.blk.c.width(); ++i )
      if ( m.blk.c.role( i ) == line_role::ancilla )
        layout.clean.push_back( i );
    if ( verify_modmult( m.blk.c, M, C, layout ) )
      return std::move( m );
  }
  throw std::logic_error( "no candidate circuit verified for " + std::to_string( C ) + "x % " + std::to_string( M ) );
}

} // namespace revmod
