#pragma once

// Reference implementations kept deliberately naive. They share no code
// paths with the library routines they check beyond the basic value types.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "../image.hpp"
#include "../set_operator.hpp"
#include "../window.hpp"

namespace stackmorph::verify::oracle
{

/// Pattern index at (x, y) read directly from the image, zero outside.
inline std::uint32_t patch_index( const BinaryImage& img, const Window& w, int x, int y )
{
  std::uint32_t idx = 0;
  for ( std::size_t i = 0; i < w.size(); ++i )
  {
    int const px = x + w[i].dx, py = y + w[i].dy;
    if ( px >= 0 && py >= 0 && px < img.width() && py < img.height() && img( px, py ) )
      idx |= 1u << i;
  }
  return idx;
}

/// Zero-padded set application, one full window read per pixel.
inline BinaryImage apply_set_naive( const SetOperator& op, const BinaryImage& img )
{
  BinaryImage out( img.width(), img.height() );
  for ( int y = 0; y < img.height(); ++y )
    for ( int x = 0; x < img.width(); ++x )
      out( x, y ) = op( patch_index( img, op.window(), x, y ) ) ? 1 : 0;
  return out;
}

/// Stack operator as the sum of the set operator over all m thresholded slices.
inline GreyImage apply_stack_by_slices( const SetOperator& op, const GreyImage& f )
{
  GreyImage out( f.width(), f.height(), f.max_level() );
  BinaryImage slice( f.width(), f.height() );
  for ( int t = 1; t <= f.max_level(); ++t )
  {
    for ( std::size_t i = 0; i < f.pixel_count(); ++i )
      slice[i] = f[i] >= t ? 1 : 0;
    auto const s = apply_set_naive( op, slice );
    for ( std::size_t i = 0; i < s.pixel_count(); ++i )
      out[i] = static_cast<level_t>( out[i] + s[i] );
  }
  return out;
}

/// An interval as a (lower, upper) pair of pattern indices.
using RawInterval = std::pair<std::uint32_t, std::uint32_t>;

/*! Maximal intervals of the kernel of `op` by trying all 3^n intervals.

  Each candidate [A, B] with A a subset of B is kept when all its members are
  in the kernel; candidates strictly inside another kept one are dropped.
  Sorted by (lower, upper).
*/
inline std::vector<RawInterval> basis_by_enumeration( const SetOperator& op )
{
  auto const n = op.arity();
  std::uint32_t const full = ( n == 32 ) ? 0xffffffffu : ( ( 1u << n ) - 1u );
  std::vector<RawInterval> inside;
  for ( std::uint32_t b = 0;; ++b )
  {
    // A ranges over the subsets of B
    for ( std::uint32_t a = b;; a = ( a - 1 ) & b )
    {
      bool ok = true;
      std::uint32_t const free = b & ~a;
      for ( std::uint32_t s = free;; s = ( s - 1 ) & free )
      {
        if ( !op( a | s ) )
        {
          ok = false;
          break;
        }
        if ( s == 0 )
          break;
      }
      if ( ok )
        inside.emplace_back( a, b );
      if ( a == 0 )
        break;
    }
    if ( b == full )
      break;
  }
  std::vector<RawInterval> out;
  for ( auto const& [a, b] : inside )
  {
    bool dominated = false;
    for ( auto const& [c, d] : inside )
      if ( ( c & ~a ) == 0 && ( b & ~d ) == 0 && ( c != a || d != b ) )
      {
        dominated = true;
        break;
      }
    if ( !dominated )
      out.emplace_back( a, b );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

/// Operator value at a grey patch: the number of levels t with phi(T_t[f]) = 1.
inline int stack_value_by_levels( const SetOperator& op, const std::vector<level_t>& f, int m )
{
  int count = 0;
  for ( int t = 1; t <= m; ++t )
  {
    std::uint32_t idx = 0;
    for ( std::size_t i = 0; i < f.size(); ++i )
      if ( f[i] >= t )
        idx |= 1u << i;
    count += op( idx ) ? 1 : 0;
  }
  return count;
}

} // namespace stackmorph::verify::oracle
