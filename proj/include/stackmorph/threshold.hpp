#pragma once

#include <span>
#include <string>
#include <vector>

#include "image.hpp"
#include "pattern.hpp"

namespace stackmorph
{

namespace detail
{
inline void require_level( int t, int max_level )
{
  if ( t < 1 || t > max_level )
    throw domain_error( "threshold level " + std::to_string( t ) + " outside 1.." + std::to_string( max_level ) );
}
} // namespace detail

/// T_t[f]: 1 where f >= t.
inline BinaryImage cross_section( const GreyImage& f, int t )
{
  detail::require_level( t, f.max_level() );
  BinaryImage out( f.width(), f.height() );
  for ( std::size_t i = 0; i < f.pixel_count(); ++i )
    out[i] = f[i] >= t ? 1 : 0;
  return out;
}

inline BinaryPattern cross_section( const GreyPattern& f, int t )
{
  detail::require_level( t, f.max_level() );
  std::uint32_t bits = 0;
  for ( std::size_t i = 0; i < f.size(); ++i )
    if ( f[i] >= t )
      bits |= 1u << i;
  return { f.size(), bits };
}

/// Cross-sections for t = 1..m; element k holds level k+1.
inline std::vector<BinaryImage> cross_sections( const GreyImage& f )
{
  std::vector<BinaryImage> out;
  out.reserve( static_cast<std::size_t>( f.max_level() ) );
  for ( int t = 1; t <= f.max_level(); ++t )
    out.push_back( cross_section( f, t ) );
  return out;
}

namespace detail
{
inline void require_slice_shapes( std::span<const BinaryImage> slices )
{
  for ( auto const& s : slices )
    if ( !s.same_shape( slices.front() ) )
      throw dimension_error( "slices have different dimensions" );
}
} // namespace detail

/// True iff slice t+1 <= slice t everywhere.
inline bool is_stacked( std::span<const BinaryImage> slices )
{
  if ( slices.empty() )
    return true;
  detail::require_slice_shapes( slices );
  for ( std::size_t t = 1; t < slices.size(); ++t )
    for ( std::size_t i = 0; i < slices[t].pixel_count(); ++i )
      if ( slices[t][i] > slices[t - 1][i] )
        return false;
  return true;
}

/*! \brief Sum of a stack of cross-sections, slices[k] being level k+1.

  The result has max level m = slices.size(). Throws stacking_error naming
  the first level t and pixel index x where slice t is above slice t-1.
*/
inline GreyImage reconstruct( std::span<const BinaryImage> slices )
{
  if ( slices.empty() )
    throw domain_error( "reconstruction needs at least one slice" );
  detail::require_slice_shapes( slices );
  auto const& first = slices.front();
  GreyImage out( first.width(), first.height(), static_cast<int>( slices.size() ) );
  for ( std::size_t t = 0; t < slices.size(); ++t )
  {
    auto const& s = slices[t];
    for ( std::size_t i = 0; i < s.pixel_count(); ++i )
    {
      if ( t > 0 && s[i] > slices[t - 1][i] )
      {
        throw stacking_error( "slice " + std::to_string( t + 1 ) + " exceeds slice " + std::to_string( t ) +
                                  " at pixel " + std::to_string( i ),
                              static_cast<int>( t + 1 ), i );
      }
      out[i] = static_cast<level_t>( out[i] + ( s[i] ? 1 : 0 ) );
    }
  }
  return out;
}

} // namespace stackmorph
