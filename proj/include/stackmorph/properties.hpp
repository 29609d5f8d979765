#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "basis.hpp"
#include "engine.hpp"
#include "enumerate.hpp"

namespace stackmorph
{

/// The ten lattice properties transferred between set and stack operators.
enum class Property
{
  increasing,
  decreasing,
  extensive,
  anti_extensive,
  erosion,
  dilation,
  anti_dilation,
  anti_erosion,
  sup_generating,
  inf_generating
};

inline constexpr std::array<Property, 10> all_properties{
    Property::increasing,     Property::decreasing,    Property::extensive,     Property::anti_extensive,
    Property::erosion,        Property::dilation,      Property::anti_dilation, Property::anti_erosion,
    Property::sup_generating, Property::inf_generating };

inline std::string_view name( Property p )
{
  constexpr std::array<std::string_view, 10> names{ "increasing",    "decreasing",     "extensive",
                                                    "anti_extensive", "erosion",        "dilation",
                                                    "anti_dilation", "anti_erosion",   "sup_generating",
                                                    "inf_generating" };
  return names[static_cast<std::size_t>( p )];
}

enum class Verdict
{
  fails,
  holds,
  not_applicable
};

inline std::string_view to_string( Verdict v )
{
  return v == Verdict::holds ? "yes" : v == Verdict::fails ? "no" : "n/a";
}

/// Counterexample pair. Single-pattern counterexamples repeat the pattern.
struct Witness
{
  BinaryPattern first;
  BinaryPattern second;

  friend bool operator==( const Witness&, const Witness& ) = default;
};

struct FlagResult
{
  Verdict verdict = Verdict::fails;
  std::optional<Witness> witness;
};

struct PropertyReport
{
  std::array<FlagResult, 10> flags{};

  FlagResult& operator[]( Property p ) { return flags[static_cast<std::size_t>( p )]; }
  const FlagResult& operator[]( Property p ) const { return flags[static_cast<std::size_t>( p )]; }
  bool holds( Property p ) const { return ( *this )[p].verdict == Verdict::holds; }

  /// Fixed-width table: property, yes/no/n/a, witness as hex pattern indices.
  std::string render() const
  {
    std::ostringstream os;
    os << "property        value  witness\n";
    for ( auto p : all_properties )
    {
      auto const& f = ( *this )[p];
      char line[96];
      std::snprintf( line, sizeof line, "%-15s %-5s", std::string( name( p ) ).c_str(),
                     std::string( to_string( f.verdict ) ).c_str() );
      os << line;
      if ( f.witness )
      {
        std::snprintf( line, sizeof line, "  0x%x 0x%x", f.witness->first.bits(), f.witness->second.bits() );
        os << line;
      }
      os << '\n';
    }
    return os.str();
  }
};

struct CheckResult
{
  bool holds = true;
  std::optional<Witness> witness;
};

/*! \brief Monotonicity of the characteristic function.

  Only single-bit raises X -> X + {w} are checked; on the Boolean lattice
  these generate the order, so this is equivalent to checking all pairs.
  The witness is the first (X, X + {w}) with phi(X) = 1 and phi(X + {w}) = 0.
*/
inline CheckResult check_increasing( const SetOperator& op )
{
  auto const n = op.arity();
  for ( std::uint64_t x = 0; x < op.table_size(); ++x )
  {
    auto const xi = static_cast<std::uint32_t>( x );
    if ( !op( xi ) )
      continue;
    for ( std::size_t w = 0; w < n; ++w )
    {
      std::uint32_t const y = xi | ( 1u << w );
      if ( y != xi && !op( y ) )
        return { false, Witness{ BinaryPattern( n, xi ), BinaryPattern( n, y ) } };
    }
  }
  return {};
}

/// Decreasing = increasing after complementing the input; witness (X, Y) with X <= Y, phi(X) < phi(Y).
inline CheckResult check_decreasing( const SetOperator& op )
{
  auto r = check_increasing( input_complemented( op ) );
  if ( r.witness )
    r.witness = Witness{ complement( r.witness->second ), complement( r.witness->first ) };
  return r;
}

namespace detail
{

/// phi(X) >= X(o) (extensive) or phi(X) <= X(o) (anti-extensive).
inline FlagResult check_extensive( const SetOperator& op, bool anti )
{
  auto const o = op.window().origin_index();
  if ( !o )
    return { Verdict::not_applicable, std::nullopt };
  for ( std::uint64_t x = 0; x < op.table_size(); ++x )
  {
    auto const xi = static_cast<std::uint32_t>( x );
    bool const at_origin = ( xi >> *o ) & 1u;
    if ( anti ? ( op( xi ) && !at_origin ) : ( !op( xi ) && at_origin ) )
    {
      BinaryPattern const p( op.arity(), xi );
      return { Verdict::fails, Witness{ p, p } };
    }
  }
  return { Verdict::holds, std::nullopt };
}

} // namespace detail

/// Runs `check` on the dual operator, i.e. with both orders reversed.
template<typename Check>
auto in_dual_order( const SetOperator& op, Check&& check )
{
  return check( dual( op ) );
}

inline constexpr std::size_t max_algebraic_window = 9;

/*! \brief Checks a defining equation over all pattern pairs.

  - erosion:       phi(X & Y) = phi(X) & phi(Y), phi(W) = 1
  - dilation:      phi(X | Y) = phi(X) | phi(Y), phi(0) = 0
  - anti_dilation: phi(X | Y) = phi(X) & phi(Y), phi(0) = 1
  - anti_erosion:  phi(X & Y) = phi(X) | phi(Y), phi(W) = 0

  The unit conditions are the empty meet/join case. When only the unit
  condition fails, the witness is (W, W) or (0, 0).
*/
inline CheckResult check_algebraic( const SetOperator& op, Property p )
{
  auto const n = op.arity();
  if ( n > max_algebraic_window )
    throw capacity_error( "algebraic checks enumerate 4^|W| pairs and need |W| <= 9", std::pow( 4.0, double( n ) ) );

  bool use_meet, out_and;
  bool unit_value;
  switch ( p )
  {
  case Property::erosion:
    use_meet = true, out_and = true, unit_value = true;
    break;
  case Property::dilation:
    use_meet = false, out_and = false, unit_value = false;
    break;
  case Property::anti_dilation:
    use_meet = false, out_and = true, unit_value = true;
    break;
  case Property::anti_erosion:
    use_meet = true, out_and = false, unit_value = false;
    break;
  default:
    throw domain_error( "no algebraic check for property " + std::string( name( p ) ) );
  }

  auto const size = op.table_size();
  for ( std::uint64_t x = 0; x < size; ++x )
    for ( std::uint64_t y = x + 1; y < size; ++y )
    {
      auto const xi = static_cast<std::uint32_t>( x ), yi = static_cast<std::uint32_t>( y );
      bool const lhs = op( use_meet ? ( xi & yi ) : ( xi | yi ) );
      bool const rhs = out_and ? ( op( xi ) && op( yi ) ) : ( op( xi ) || op( yi ) );
      if ( lhs != rhs )
        return { false, Witness{ BinaryPattern( n, xi ), BinaryPattern( n, yi ) } };
    }

  // meets fix W as unit, joins fix 0
  std::uint32_t const unit = use_meet ? op.window().full_mask() : 0u;
  if ( op( unit ) != unit_value )
  {
    BinaryPattern const u( n, unit );
    return { false, Witness{ u, u } };
  }
  return {};
}

/*! \brief All ten flags, the lattice ones read off the basis.

  erosion iff the basis is {[X, W]}; anti-dilation iff it is {[0, Y]};
  sup-generating iff it has exactly one interval. Dilation, anti-erosion
  and inf-generating are the same tests on the dual operator. Witnesses for
  the lattice flags come from check_algebraic when |W| <= 9.
*/
inline PropertyReport check_structural( const SetOperator& op )
{
  PropertyReport r;
  auto inc = check_increasing( op );
  r[Property::increasing] = { inc.holds ? Verdict::holds : Verdict::fails, inc.witness };
  auto dec = check_decreasing( op );
  r[Property::decreasing] = { dec.holds ? Verdict::holds : Verdict::fails, dec.witness };
  r[Property::extensive] = detail::check_extensive( op, false );
  r[Property::anti_extensive] = detail::check_extensive( op, true );

  struct Shape
  {
    bool one_interval, erosion_form, anti_dilation_form;
  };
  auto shape = []( const SetOperator& o ) {
    auto const b = basis_of( kernel_of( o ) );
    bool const one = b.intervals.size() == 1;
    return Shape{ one, one && b.intervals[0].upper.bits() == o.window().full_mask(),
                  one && b.intervals[0].lower.bits() == 0 };
  };
  auto const primal = shape( op );
  auto const dualed = in_dual_order( op, shape );

  auto set = [&]( Property p, bool v ) {
    r[p].verdict = v ? Verdict::holds : Verdict::fails;
    if ( !v && op.arity() <= max_algebraic_window && p != Property::sup_generating && p != Property::inf_generating )
      r[p].witness = check_algebraic( op, p ).witness;
  };
  set( Property::erosion, primal.erosion_form );
  set( Property::anti_dilation, primal.anti_dilation_form );
  set( Property::sup_generating, primal.one_interval );
  set( Property::dilation, dualed.erosion_form );
  set( Property::anti_erosion, dualed.anti_dilation_form );
  set( Property::inf_generating, dualed.one_interval );
  return r;
}

/// Per-property comparison of the set-side flag with the grey-side brute-force flag.
struct InheritanceReport
{
  int max_level = 0;
  std::array<Verdict, 10> set_side{};
  std::array<Verdict, 10> grey_side{};

  bool matches( Property p ) const
  {
    return set_side[static_cast<std::size_t>( p )] == grey_side[static_cast<std::size_t>( p )];
  }
  bool all_match() const
  {
    return std::all_of( all_properties.begin(), all_properties.end(), [&]( auto p ) { return matches( p ); } );
  }

  std::string render() const
  {
    std::ostringstream os;
    os << "property        set    grey   match\n";
    for ( auto p : all_properties )
    {
      char line[96];
      std::snprintf( line, sizeof line, "%-15s %-6s %-6s %s\n", std::string( name( p ) ).c_str(),
                     std::string( to_string( set_side[static_cast<std::size_t>( p )] ) ).c_str(),
                     std::string( to_string( grey_side[static_cast<std::size_t>( p )] ) ).c_str(),
                     matches( p ) ? "yes" : "NO" );
      os << line;
    }
    return os.str();
  }
};

namespace detail
{

/// True iff `member` (rank-indexed) is a single nonempty grey interval.
inline bool is_one_grey_interval( const std::vector<std::uint8_t>& member,
                                  const std::vector<std::vector<level_t>>& digits, std::size_t n )
{
  std::vector<int> lo( n, std::numeric_limits<int>::max() ), hi( n, -1 );
  std::uint64_t count = 0;
  for ( std::size_t r = 0; r < member.size(); ++r )
  {
    if ( !member[r] )
      continue;
    ++count;
    for ( std::size_t i = 0; i < n; ++i )
    {
      lo[i] = std::min<int>( lo[i], digits[r][i] );
      hi[i] = std::max<int>( hi[i], digits[r][i] );
    }
  }
  if ( count == 0 )
    return false;
  std::uint64_t box = 1;
  for ( std::size_t i = 0; i < n; ++i )
    box *= static_cast<std::uint64_t>( hi[i] - lo[i] + 1 );
  return box == count;
}

} // namespace detail

/*! \brief Grey-side truth of the ten properties for the stack extension, by brute force.

  Every grey pattern of the window is evaluated; pair properties run over
  all (m+1)^|W| x (m+1)^|W| pairs. Sup-generating means every level set
  {phi >= t}, t = 1..m, is one nonempty interval; inf-generating means every
  {phi <= s}, s = 0..m-1, is.
*/
inline std::array<Verdict, 10> grey_side_properties( const SetOperator& op, int max_level,
                                                      double cap = default_enumeration_cap )
{
  auto const n = op.arity();
  StackOperator const stack( op, max_level );
  std::vector<std::vector<level_t>> digits;
  std::vector<int> value;
  for ( auto const& f : enumerate_grey( n, max_level, cap ) )
  {
    digits.push_back( f.levels() );
    value.push_back( eval_stack( stack, f ) );
  }
  auto const N = value.size();
  std::vector<std::uint64_t> radix( n, 1 );
  for ( std::size_t i = 1; i < n; ++i )
    radix[i] = radix[i - 1] * ( static_cast<std::uint64_t>( max_level ) + 1 );
  auto combine = [&]( std::size_t a, std::size_t b, bool take_min ) {
    std::uint64_t r = 0;
    for ( std::size_t i = 0; i < n; ++i )
      r += radix[i] * ( take_min ? std::min( digits[a][i], digits[b][i] ) : std::max( digits[a][i], digits[b][i] ) );
    return static_cast<std::size_t>( r );
  };
  auto below = [&]( std::size_t a, std::size_t b ) {
    for ( std::size_t i = 0; i < n; ++i )
      if ( digits[a][i] > digits[b][i] )
        return false;
    return true;
  };

  bool inc = true, dec = true, ero = true, dil = true, adil = true, aero = true;
  for ( std::size_t a = 0; a < N; ++a )
    for ( std::size_t b = 0; b < N; ++b )
    {
      if ( below( a, b ) )
      {
        inc = inc && value[a] <= value[b];
        dec = dec && value[a] >= value[b];
      }
      int const vmeet = value[combine( a, b, true )];
      int const vjoin = value[combine( a, b, false )];
      ero = ero && vmeet == std::min( value[a], value[b] );
      aero = aero && vmeet == std::max( value[a], value[b] );
      dil = dil && vjoin == std::max( value[a], value[b] );
      adil = adil && vjoin == std::min( value[a], value[b] );
    }
  // rank 0 is the zero pattern, rank N-1 the constant m pattern
  ero = ero && value[N - 1] == max_level;
  aero = aero && value[N - 1] == 0;
  dil = dil && value[0] == 0;
  adil = adil && value[0] == max_level;

  std::array<Verdict, 10> out{};
  auto put = [&]( Property p, bool v ) { out[static_cast<std::size_t>( p )] = v ? Verdict::holds : Verdict::fails; };
  put( Property::increasing, inc );
  put( Property::decreasing, dec );
  put( Property::erosion, ero );
  put( Property::dilation, dil );
  put( Property::anti_dilation, adil );
  put( Property::anti_erosion, aero );

  auto const o = op.window().origin_index();
  if ( !o )
  {
    out[static_cast<std::size_t>( Property::extensive )] = Verdict::not_applicable;
    out[static_cast<std::size_t>( Property::anti_extensive )] = Verdict::not_applicable;
  }
  else
  {
    bool ext = true, aext = true;
    for ( std::size_t a = 0; a < N; ++a )
    {
      ext = ext && value[a] >= digits[a][*o];
      aext = aext && value[a] <= digits[a][*o];
    }
    put( Property::extensive, ext );
    put( Property::anti_extensive, aext );
  }

  bool sup = true, inf = true;
  std::vector<std::uint8_t> member( N );
  for ( int t = 1; t <= max_level && sup; ++t )
  {
    for ( std::size_t a = 0; a < N; ++a )
      member[a] = value[a] >= t;
    sup = detail::is_one_grey_interval( member, digits, n );
  }
  for ( int s = 0; s < max_level && inf; ++s )
  {
    for ( std::size_t a = 0; a < N; ++a )
      member[a] = value[a] <= s;
    inf = detail::is_one_grey_interval( member, digits, n );
  }
  put( Property::sup_generating, sup );
  put( Property::inf_generating, inf );
  return out;
}

/// Set-side flags (check_structural) against the grey-side brute force.
inline InheritanceReport verify_stack_inheritance( const SetOperator& op, int max_level,
                                                   double cap = default_enumeration_cap )
{
  InheritanceReport r;
  r.max_level = max_level;
  auto const set_report = check_structural( op );
  for ( auto p : all_properties )
    r.set_side[static_cast<std::size_t>( p )] = set_report[p].verdict;
  r.grey_side = grey_side_properties( op, max_level, cap );
  return r;
}

/// Concrete violation of T_t[psi(f)] = psi~(T_t[f]) at pixel (x, y).
struct ThresholdWitness
{
  GreyImage image;
  int level = 1;
  int x = 0;
  int y = 0;
};

struct StackFilterResult
{
  bool is_filter = true;
  std::optional<ThresholdWitness> witness;
};

/// First level t where 1{phi(f) >= t} differs from phi~(T_t[f]), if any.
inline std::optional<int> threshold_mismatch( const SetOperator& op, const GreyPattern& f )
{
  int const value = eval_stack( StackOperator( op, f.max_level() ), f );
  for ( int t = 1; t <= f.max_level(); ++t )
    if ( ( value >= t ) != eval_set( op, cross_section( f, t ) ) )
      return t;
  return std::nullopt;
}

/// Places a window pattern in the smallest image holding it; returns the image and the center.
inline ThresholdWitness lift_to_image( const Window& w, const GreyPattern& f, int t )
{
  ThresholdWitness wit{ GreyImage( w.max_dx() - w.min_dx() + 1, w.max_dy() - w.min_dy() + 1, f.max_level() ), t,
                        -w.min_dx(), -w.min_dy() };
  for ( std::size_t i = 0; i < w.size(); ++i )
    wit.image( wit.x + w[i].dx, wit.y + w[i].dy ) = f[i];
  return wit;
}

/// Whether the image-level threshold equation fails at the witness pixel.
inline bool violates_threshold_commutation( const SetOperator& op, const ThresholdWitness& wit )
{
  auto const out = apply_stack( StackOperator( op, wit.image.max_level() ), wit.image );
  auto const section = apply_set( op, cross_section( wit.image, wit.level ) );
  bool const lhs = out( wit.x, wit.y ) >= wit.level;
  return lhs != static_cast<bool>( section( wit.x, wit.y ) );
}

/*! \brief Decides whether the stack extension commutes with every threshold.

  Increasing operators are confirmed on `trials` random 16x16 images.
  Otherwise a witness is built from the violating pair X <= Y of
  check_increasing (f = m on X, m-1 on Y\X, 0 elsewhere, t = m); if that is
  unavailable (m = 1) the grey patterns are searched by increasing l1 norm.
  With m = 1 every operator commutes, so no witness exists.
*/
inline StackFilterResult check_stack_filter( const SetOperator& op, int max_level, int trials,
                                             std::uint64_t seed = 1, double cap = default_enumeration_cap )
{
  if ( trials < 1 )
    throw domain_error( "stack filter check needs at least one trial" );
  StackOperator const stack( op, max_level );
  auto const inc = check_increasing( op );
  auto const n = op.arity();

  if ( inc.holds )
  {
    std::mt19937_64 rng( seed );
    for ( int k = 0; k < trials; ++k )
    {
      GreyImage f( 16, 16, max_level );
      for ( auto& v : f.data() )
        v = static_cast<level_t>( rng() % ( static_cast<std::uint64_t>( max_level ) + 1 ) );
      auto const out = apply_stack( stack, f );
      for ( int t = 1; t <= max_level; ++t )
      {
        auto const lhs = cross_section( out, t );
        auto const rhs = apply_set( op, cross_section( f, t ) );
        for ( std::size_t i = 0; i < lhs.pixel_count(); ++i )
          if ( lhs[i] != rhs[i] )
            return { false, ThresholdWitness{ f, t, static_cast<int>( i % 16 ), static_cast<int>( i / 16 ) } };
      }
    }
    return {};
  }

  if ( max_level >= 2 )
  {
    auto const x = inc.witness->first, y = inc.witness->second;
    std::vector<level_t> v( n );
    for ( std::size_t i = 0; i < n; ++i )
      v[i] = static_cast<level_t>( x[i] ? max_level : y[i] ? max_level - 1 : 0 );
    auto wit = lift_to_image( op.window(), GreyPattern( std::move( v ), max_level ), max_level );
    if ( violates_threshold_commutation( op, wit ) )
      return { false, std::move( wit ) };
  }

  std::vector<GreyPattern> patterns;
  for ( auto const& f : enumerate_grey( n, max_level, cap ) )
    patterns.push_back( f );
  std::stable_sort( patterns.begin(), patterns.end(),
                    []( auto const& a, auto const& b ) { return a.l1_norm() < b.l1_norm(); } );
  for ( auto const& f : patterns )
    if ( auto t = threshold_mismatch( op, f ) )
      return { false, lift_to_image( op.window(), f, *t ) };
  return {};
}

} // namespace stackmorph
