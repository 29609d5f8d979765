#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../basis.hpp"
#include "../engine.hpp"
#include "../kernel.hpp"
#include "../properties.hpp"
#include "../threshold.hpp"
#include "../toolkit/builtins.hpp"
#include "../toolkit/noise.hpp"
#include "../toolkit/pipeline.hpp"
#include "oracle.hpp"

namespace stackmorph::verify
{

struct CriterionResult
{
  int id = 0;
  std::string title;
  bool correct = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;
  std::vector<std::string> notes; ///< extra lines that do not affect the verdict

  bool passed() const { return correct && seconds < limit; }

  std::string render() const
  {
    std::ostringstream os;
    char head[160];
    std::snprintf( head, sizeof head, "%s criterion %d: %s [%.2f s, limit %.0f s]", passed() ? "PASS" : "FAIL", id,
                   title.c_str(), seconds, limit );
    os << head;
    if ( !detail.empty() )
      os << " -- " << detail;
    if ( correct && seconds >= limit )
      os << " (over time limit)";
    for ( auto const& n : notes )
      os << "\n    " << n;
    return os.str();
  }
};

/// Wall-clock limits in seconds, criteria 1..9.
inline constexpr double time_limits[10] = { 0, 5, 10, 30, 10, 20, 60, 30, 60, 10 };
/// Limit for the full `verify` run.
inline constexpr double total_time_limit = 240;

namespace detail
{

using Rng = std::mt19937_64;

inline CriterionResult titled( int id, std::string title )
{
  CriterionResult r;
  r.id = id;
  r.title = std::move( title );
  return r;
}

inline int uniform( Rng& rng, int lo, int hi )
{
  return lo + static_cast<int>( rng() % static_cast<std::uint64_t>( hi - lo + 1 ) );
}

inline SetOperator random_operator( Rng& rng, const Window& w )
{
  SetOperator op( w );
  for ( std::uint64_t i = 0; i < op.table_size(); ++i )
    op.set( static_cast<std::uint32_t>( i ), rng() >> 63 );
  return op;
}

inline BinaryImage random_binary( Rng& rng, int width, int height )
{
  BinaryImage img( width, height );
  for ( auto& v : img.data() )
    v = static_cast<std::uint8_t>( rng() >> 63 );
  return img;
}

inline GreyImage random_grey( Rng& rng, int width, int height, int m )
{
  GreyImage img( width, height, m );
  for ( auto& v : img.data() )
    v = static_cast<level_t>( rng() % ( static_cast<std::uint64_t>( m ) + 1 ) );
  return img;
}

/// Windows used for the exhaustive small cases: one point, a horizontal pair, a horizontal triple.
inline Window small_window( std::size_t n )
{
  return Window::rectangle( 1, static_cast<int>( n ) );
}

inline std::string count_line( const char* what, std::uint64_t bad, std::uint64_t total )
{
  return std::to_string( bad ) + " " + what + " in " + std::to_string( total ) + " checks";
}

// ---------------------------------------------------------------------------

inline CriterionResult threshold_round_trip()
{
  auto r = titled( 1, "threshold round-trip" );
  Rng rng( 101 );
  constexpr int levels[] = { 1, 2, 3, 255 };
  std::uint64_t bad = 0;
  for ( int k = 0; k < 1000; ++k )
  {
    auto const f = random_grey( rng, uniform( rng, 1, 64 ), uniform( rng, 1, 64 ), levels[k % 4] );
    auto const slices = cross_sections( f );
    if ( !is_stacked( slices ) || reconstruct( slices ) != f )
      ++bad;
  }
  r.correct = bad == 0;
  r.detail = count_line( "mismatches", bad, 1000 );
  return r;
}

inline CriterionResult extension_property()
{
  auto r = titled( 2, "extension property" );
  Rng rng( 202 );
  constexpr int levels[] = { 1, 2, 3, 255 };
  constexpr BorderPolicy borders[] = { BorderPolicy::zero_pad, BorderPolicy::replicate, BorderPolicy::crop_interior };
  std::uint64_t bad = 0, total = 0;
  auto check = [&]( const SetOperator& op, int k ) {
    int const m = levels[k % 4];
    auto const border = borders[k % 3];
    auto const x = random_binary( rng, uniform( rng, 4, 32 ), uniform( rng, 4, 32 ) );
    ++total;
    if ( apply_stack( StackOperator( op, m ), embed( x, m ), border ) != embed( apply_set( op, x, border ), m ) )
      ++bad;
  };
  auto const pair = small_window( 2 );
  for ( std::uint64_t bits = 0; bits < 16; ++bits )
    for ( int k = 0; k < 12; ++k )
      check( SetOperator::from_bits( pair, bits ), k );
  auto const square = Window::rectangle( 3, 3 );
  for ( int k = 0; k < 200; ++k )
    check( random_operator( rng, square ), k );
  r.correct = bad == 0;
  r.detail = count_line( "mismatches", bad, total );
  return r;
}

inline CriterionResult stack_formula()
{
  auto r = titled( 3, "stack formula, patch path vs slice path" );
  Rng rng( 303 );
  auto const square = Window::rectangle( 3, 3 );
  std::uint64_t bad = 0;
  for ( int k = 0; k < 100; ++k )
  {
    auto const op = random_operator( rng, square );
    auto const f = random_grey( rng, uniform( rng, 8, 32 ), uniform( rng, 8, 32 ), 255 );
    if ( apply_stack( StackOperator( op, 255 ), f ) != oracle::apply_stack_by_slices( op, f ) )
      ++bad;
  }
  r.correct = bad == 0;
  r.detail = count_line( "mismatches", bad, 100 );
  return r;
}

inline CriterionResult lipschitz()
{
  auto r = titled( 4, "1-Lipschitz bound" );
  Rng rng( 404 );
  constexpr int levels[] = { 1, 3, 17, 255 };
  auto const square = Window::rectangle( 3, 3 );
  std::uint64_t violations = 0;
  for ( int k = 0; k < 10000; ++k )
  {
    int const m = levels[k % 4];
    auto const op = random_operator( rng, k % 2 ? square : small_window( 3 ) );
    auto const f = random_grey( rng, 8, 8, m );
    GreyImage g = f;
    if ( k % 3 == 0 )
      g = random_grey( rng, 8, 8, m );
    else
    {
      // a few changed pixels keep the l1 gap small enough to be a real test
      int const changes = uniform( rng, 1, 3 );
      for ( int c = 0; c < changes; ++c )
        g[static_cast<std::size_t>( uniform( rng, 0, 63 ) )] = static_cast<level_t>( uniform( rng, 0, m ) );
    }
    auto const gap = lipschitz_gap( StackOperator( op, m ), f, g );
    if ( gap.sup_diff > gap.l1_diff )
      ++violations;
  }

  // one-pixel bump under the identity: both sides equal the bump height
  auto const id = toolkit::identity( square );
  std::uint64_t unequal = 0;
  for ( int k = 0; k < 100; ++k )
  {
    auto const f = random_grey( rng, 8, 8, 255 );
    GreyImage g = f;
    auto const i = static_cast<std::size_t>( uniform( rng, 0, 63 ) );
    g[i] = static_cast<level_t>( uniform( rng, 0, 255 ) );
    auto const gap = lipschitz_gap( StackOperator( id, 255 ), f, g );
    if ( gap.sup_diff != gap.l1_diff )
      ++unequal;
  }
  r.correct = violations == 0 && unequal == 0;
  r.detail = count_line( "violations", violations, 10000 ) + "; equality failed in " + std::to_string( unequal ) +
             " of 100 identity bumps";
  return r;
}

inline CriterionResult stack_filter_characterization()
{
  auto r = titled( 5, "stack filters are exactly the increasing operators" );
  auto const w = small_window( 3 );
  int const m = 3;
  std::uint64_t increasing = 0, missing_witness = 0, false_mismatch = 0;
  for ( std::uint64_t bits = 0; bits < 256; ++bits )
  {
    auto const op = SetOperator::from_bits( w, bits );
    if ( check_increasing( op ).holds )
    {
      ++increasing;
      for ( auto const& f : enumerate_grey( 3, m ) )
        if ( threshold_mismatch( op, f ) )
          ++false_mismatch;
    }
    else
    {
      auto const res = check_stack_filter( op, m, 1 );
      if ( res.is_filter || !res.witness || !violates_threshold_commutation( op, *res.witness ) )
        ++missing_witness;
    }
  }
  r.correct = missing_witness == 0 && false_mismatch == 0;
  r.detail = std::to_string( increasing ) + " increasing ops, " + std::to_string( false_mismatch ) +
             " threshold mismatches among them; " + std::to_string( missing_witness ) + " of " +
             std::to_string( 256 - increasing ) + " non-increasing ops without a confirmed witness";
  return r;
}

inline CriterionResult inheritance()
{
  auto r = titled( 6, "set-side flags equal grey-side flags" );
  std::uint64_t mismatches = 0, comparisons = 0;
  std::vector<std::string> examples;
  auto run = [&]( const SetOperator& op, int m ) {
    auto const rep = verify_stack_inheritance( op, m );
    for ( auto p : all_properties )
    {
      ++comparisons;
      if ( !rep.matches( p ) )
      {
        ++mismatches;
        if ( examples.size() < 8 )
        {
          std::ostringstream os;
          os << "table 0x" << std::hex << op.words()[0] << std::dec << " |W|=" << op.arity() << " m=" << m << " "
             << name( p ) << ": set " << to_string( rep.set_side[static_cast<std::size_t>( p )] ) << ", grey "
             << to_string( rep.grey_side[static_cast<std::size_t>( p )] );
          examples.push_back( os.str() );
        }
      }
    }
  };
  auto const pair = small_window( 2 );
  for ( int m : { 2, 3 } )
    for ( std::uint64_t bits = 0; bits < 16; ++bits )
      run( SetOperator::from_bits( pair, bits ), m );
  Rng rng( 606 );
  auto const triple = small_window( 3 );
  for ( int k = 0; k < 500; ++k )
    run( random_operator( rng, triple ), 2 );
  r.correct = mismatches == 0;
  r.detail = count_line( "mismatches", mismatches, comparisons );
  r.notes = std::move( examples );
  return r;
}

inline CriterionResult kernel_basis_round_trip()
{
  auto r = titled( 7, "kernel and basis round trips" );
  std::uint64_t bad_table = 0, bad_basis = 0, not_antichain = 0, oracle_diff = 0, total = 0;
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const w = small_window( n );
    std::uint64_t const ops = std::uint64_t( 1 ) << ( std::uint64_t( 1 ) << n );
    for ( std::uint64_t bits = 0; bits < ops; ++bits )
    {
      ++total;
      auto const op = SetOperator::from_bits( w, bits );
      auto const kernel = kernel_of( op );
      if ( table_of( kernel ) != op )
        ++bad_table;
      auto const basis = basis_of( kernel );
      if ( kernel_from_basis( basis ) != kernel )
        ++bad_basis;
      for ( std::size_t i = 0; i < basis.intervals.size(); ++i )
        for ( std::size_t j = 0; j < basis.intervals.size(); ++j )
          if ( i != j && interval_subset( basis.intervals[i], basis.intervals[j] ) )
            ++not_antichain;
      std::vector<oracle::RawInterval> got;
      for ( auto const& iv : basis.intervals )
        got.emplace_back( iv.lower.bits(), iv.upper.bits() );
      std::sort( got.begin(), got.end() );
      if ( got != oracle::basis_by_enumeration( op ) )
        ++oracle_diff;
    }
  }
  r.correct = bad_table == 0 && bad_basis == 0 && not_antichain == 0 && oracle_diff == 0;
  r.detail = std::to_string( total ) + " ops: table/kernel " + std::to_string( bad_table ) + ", kernel/basis " +
             std::to_string( bad_basis ) + ", antichain " + std::to_string( not_antichain ) + ", vs 3^n oracle " +
             std::to_string( oracle_diff ) + " failures";
  return r;
}

inline CriterionResult stack_kernel_levels()
{
  auto r = titled( 8, "stack kernel levels and single-interval closed form" );

  // h_inverse, plus the counting predicate against direct evaluation on every grey pattern
  std::uint64_t bad_inverse = 0, bad_count = 0, exhaustive = 0;
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const w = small_window( n );
    std::uint64_t const ops = std::uint64_t( 1 ) << ( std::uint64_t( 1 ) << n );
    for ( int m = 1; m <= 3; ++m )
      for ( std::uint64_t bits = 0; bits < ops; ++bits )
      {
        auto const op = SetOperator::from_bits( w, bits );
        StackKernelView const view{ op, m };
        if ( h_inverse( view ) != kernel_of( op ) )
          ++bad_inverse;
        for ( auto const& f : enumerate_grey( n, m ) )
        {
          int const value = oracle::stack_value_by_levels( op, f.levels(), m );
          for ( int t = 1; t <= m; ++t )
          {
            ++exhaustive;
            if ( stack_kernel_member( view, f, t ) != ( value >= t ) )
              ++bad_count;
          }
        }
      }
  }

  // closed form [tX, tY + (m-t)W] against the counting predicate
  Rng rng( 808 );
  auto const square = Window::rectangle( 3, 3 );
  int const m = 255;
  std::uint64_t hull_disagree = 0, exact_disagree = 0, trials = 0, members = 0;
  for ( int k = 0; k < 100; ++k )
  {
    auto const y = static_cast<std::uint32_t>( rng() & 0x1ffu );
    auto const x = static_cast<std::uint32_t>( rng() ) & y;
    BinaryInterval const iv{ BinaryPattern( 9, x ), BinaryPattern( 9, y ) };
    SetBasis const basis{ square, { iv } };
    StackKernelView const view{ operator_from_basis( basis ), m };
    for ( int l = 0; l < 5; ++l )
    {
      int const t = uniform( rng, 1, m );
      auto const hull = single_interval_hull( iv, m, t );
      for ( int s = 0; s < 1000; ++s )
      {
        // half uniform, half drawn inside the hull so both answers occur
        std::vector<level_t> v( 9 );
        for ( std::size_t i = 0; i < 9; ++i )
          v[i] = static_cast<level_t>( s % 2 ? uniform( rng, hull.lower[i], hull.upper[i] ) : uniform( rng, 0, m ) );
        GreyPattern const f( std::move( v ), m );
        bool const counted = stack_kernel_member( view, f, t );
        bool const in_hull = interval_contains( hull, f );
        ++trials;
        members += counted;
        hull_disagree += in_hull != counted;
        exact_disagree += stack_basis_member( basis, m, t, f ) != counted;
      }
    }
  }

  r.correct = bad_inverse == 0 && bad_count == 0 && hull_disagree == 0;
  r.detail = "h_inverse failures " + std::to_string( bad_inverse ) + ", counting predicate " +
             count_line( "errors", bad_count, exhaustive ) + "; closed form " +
             count_line( "disagreements", hull_disagree, trials );
  char note[200];
  std::snprintf( note, sizeof note,
                 "not gating: exact form min_X f - max_{W\\Y} f >= t has %llu disagreements in %llu (%llu members)",
                 static_cast<unsigned long long>( exact_disagree ), static_cast<unsigned long long>( trials ),
                 static_cast<unsigned long long>( members ) );
  r.notes.push_back( note );
  return r;
}

/// Fixed inputs of the desk-scale pipeline check.
inline constexpr std::uint64_t pipeline_seed = 20240611;
inline constexpr double pipeline_noise = 0.025;
inline constexpr double pipeline_min_reduction = 0.5;

inline CriterionResult figure_pipeline()
{
  auto r = titled( 9, "desk-scale boundary and ASF pipeline" );
  int const m = 255;
  auto const clean = toolkit::synthetic_scene( 64, m, pipeline_seed );
  auto const x = cross_section( clean, m / 2 + 1 );
  auto const w = Window::rectangle( 3, 3 );
  auto const boundary = toolkit::boundary( w );

  bool extension = true;
  for ( auto border : { BorderPolicy::zero_pad, BorderPolicy::replicate, BorderPolicy::crop_interior } )
    extension = extension &&
                apply_stack( StackOperator( boundary, m ), embed( x, m ), border ) == embed( apply_set( boundary, x, border ), m );

  auto const noisy = toolkit::salt_pepper( clean, pipeline_noise, pipeline_seed );
  auto const filtered = toolkit::run_stack_chain( toolkit::builtin( "asf", w ), noisy, BorderPolicy::replicate );
  auto const before = l1_distance( noisy, clean );
  auto const after = l1_distance( filtered, clean );
  double const reduction = before ? 1.0 - static_cast<double>( after ) / static_cast<double>( before ) : 0.0;

  r.correct = extension && before > 0 && reduction >= pipeline_min_reduction;
  char buf[200];
  std::snprintf( buf, sizeof buf, "boundary extension %s; l1 %llu -> %llu (reduction %.1f%%, need %.0f%%)",
                 extension ? "bit-exact" : "MISMATCH", static_cast<unsigned long long>( before ),
                 static_cast<unsigned long long>( after ), 100 * reduction, 100 * pipeline_min_reduction );
  r.detail = buf;
  return r;
}

} // namespace detail

inline const std::vector<std::function<CriterionResult()>>& criteria()
{
  static const std::vector<std::function<CriterionResult()>> all{
      detail::threshold_round_trip, detail::extension_property, detail::stack_formula,
      detail::lipschitz,            detail::stack_filter_characterization, detail::inheritance,
      detail::kernel_basis_round_trip, detail::stack_kernel_levels, detail::figure_pipeline };
  return all;
}

/// Runs criterion `id` (1..9) and times it; exceptions count as failures.
inline CriterionResult run_criterion( int id )
{
  if ( id < 1 || id > 9 )
    throw usage_error( "criterion must be in 1..9, got " + std::to_string( id ) );
  auto const start = std::chrono::steady_clock::now();
  CriterionResult r;
  try
  {
    r = criteria()[static_cast<std::size_t>( id - 1 )]();
  }
  catch ( const std::exception& e )
  {
    r.id = id;
    r.title = "criterion " + std::to_string( id );
    r.correct = false;
    r.detail = std::string( "exception: " ) + e.what();
  }
  r.seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  r.limit = time_limits[id];
  return r;
}

} // namespace stackmorph::verify
