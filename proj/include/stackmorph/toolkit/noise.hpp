#pragma once

#include <cstdint>
#include <random>

#include "../error.hpp"
#include "../image.hpp"

namespace stackmorph::toolkit
{

/// Uniform double in [0,1) from the top 53 bits of one engine output.
inline double unit_draw( std::mt19937_64& rng ) { return static_cast<double>( rng() >> 11 ) * 0x1.0p-53; }

/*! \brief Salt-and-pepper corruption.

  Each pixel draws u; if u < p a second draw picks 0 or m by its top bit.
  Only raw engine outputs are used, so the result is identical on every
  standard library.
*/
inline GreyImage salt_pepper( const GreyImage& img, double p, std::uint64_t seed )
{
  if ( !( p >= 0.0 && p <= 1.0 ) )
    throw domain_error( "noise rate must be in [0,1]" );
  std::mt19937_64 rng( seed );
  GreyImage out = img;
  auto const m = static_cast<level_t>( img.max_level() );
  for ( std::size_t i = 0; i < out.pixel_count(); ++i )
  {
    if ( unit_draw( rng ) < p )
      out[i] = ( rng() >> 63 ) ? m : level_t{ 0 };
  }
  return out;
}

} // namespace stackmorph::toolkit
