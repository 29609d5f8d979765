#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "image.hpp"
#include "set_operator.hpp"
#include "stack_operator.hpp"

namespace stackmorph
{

/// How pixels outside a finite image are read.
enum class BorderPolicy
{
  zero_pad,     ///< outside pixels are 0
  replicate,    ///< outside pixels copy the nearest image pixel
  crop_interior ///< output only where the whole window fits; output frame shrinks
};

inline std::string to_string( BorderPolicy b )
{
  switch ( b )
  {
  case BorderPolicy::zero_pad:
    return "zero";
  case BorderPolicy::replicate:
    return "replicate";
  case BorderPolicy::crop_interior:
    return "crop";
  }
  return "?";
}

/// Output frame of a window sweep: size plus the input position of output pixel (0,0).
struct Frame
{
  int width = 0;
  int height = 0;
  int x0 = 0;
  int y0 = 0;
};

inline Frame output_frame( const Window& w, int width, int height, BorderPolicy border )
{
  if ( width <= 0 || height <= 0 )
    throw dimension_error( "operators need a nonempty image" );
  if ( border != BorderPolicy::crop_interior )
    return { width, height, 0, 0 };
  Frame f{ width - ( w.max_dx() - w.min_dx() ), height - ( w.max_dy() - w.min_dy() ), -w.min_dx(), -w.min_dy() };
  if ( f.width <= 0 || f.height <= 0 )
    throw dimension_error( "window extent exceeds the " + std::to_string( width ) + "x" + std::to_string( height ) +
                           " image under crop-interior" );
  return f;
}

namespace detail
{

template<typename T>
inline T read_pixel( const Raster<T>& img, int x, int y, BorderPolicy border )
{
  if ( x >= 0 && y >= 0 && x < img.width() && y < img.height() )
    return img( x, y );
  if ( border == BorderPolicy::replicate )
    return img( std::clamp( x, 0, img.width() - 1 ), std::clamp( y, 0, img.height() - 1 ) );
  return T{ 0 };
}

/// Bits i whose successor offset i+1 is offset i shifted one column right.
inline std::uint32_t horizontal_carry_mask( const Window& w )
{
  std::uint32_t carry = 0;
  for ( std::size_t i = 0; i + 1 < w.size(); ++i )
    if ( w[i + 1].dy == w[i].dy && w[i + 1].dx == w[i].dx + 1 )
      carry |= 1u << i;
  return carry;
}

} // namespace detail

/// The binary patch of `x` under `w` centered at input pixel (x, y).
inline BinaryPattern extract_pattern( const BinaryImage& img, const Window& w, int x, int y,
                                      BorderPolicy border = BorderPolicy::zero_pad )
{
  std::uint32_t bits = 0;
  for ( std::size_t i = 0; i < w.size(); ++i )
    if ( detail::read_pixel( img, x + w[i].dx, y + w[i].dy, border ) )
      bits |= 1u << i;
  return { w.size(), bits };
}

inline GreyPattern extract_pattern( const GreyImage& img, const Window& w, int x, int y,
                                    BorderPolicy border = BorderPolicy::zero_pad )
{
  std::vector<level_t> v( w.size() );
  for ( std::size_t i = 0; i < w.size(); ++i )
    v[i] = detail::read_pixel<level_t>( img, x + w[i].dx, y + w[i].dy, border );
  return GreyPattern( std::move( v ), img.max_level() );
}

/*! \brief Applies a set W-operator to a binary image.

  Output pixel x is the table entry of the window patch at x. Patterns are
  updated incrementally along a row: bits whose right neighbour is the next
  window position shift down, the rest are read fresh.
*/
inline BinaryImage apply_set( const SetOperator& op, const BinaryImage& img,
                              BorderPolicy border = BorderPolicy::zero_pad )
{
  auto const& w = op.window();
  auto const frame = output_frame( w, img.width(), img.height(), border );
  BinaryImage out( frame.width, frame.height );

  std::uint32_t const carry = detail::horizontal_carry_mask( w );
  std::vector<std::size_t> fresh;
  for ( std::size_t i = 0; i < w.size(); ++i )
    if ( !( carry >> i & 1u ) )
      fresh.push_back( i );

  for ( int oy = 0; oy < frame.height; ++oy )
  {
    int const y = oy + frame.y0;
    std::uint32_t idx = extract_pattern( img, w, frame.x0, y, border ).bits();
    out( 0, oy ) = op( idx );
    for ( int ox = 1; ox < frame.width; ++ox )
    {
      int const x = ox + frame.x0;
      idx = ( idx >> 1 ) & carry;
      for ( auto i : fresh )
        if ( detail::read_pixel( img, x + w[i].dx, y + w[i].dy, border ) )
          idx |= 1u << i;
      out( ox, oy ) = op( idx );
    }
  }
  return out;
}

/// Applies the stack extension: per pixel, the cross-section sum over the grey patch.
inline GreyImage apply_stack( const StackOperator& op, const GreyImage& img,
                              BorderPolicy border = BorderPolicy::zero_pad )
{
  if ( img.max_level() != op.max_level )
    throw domain_error( "image max level " + std::to_string( img.max_level() ) + " differs from operator max level " +
                        std::to_string( op.max_level ) );
  auto const& w = op.window();
  auto const frame = output_frame( w, img.width(), img.height(), border );
  GreyImage out( frame.width, frame.height, op.max_level );

  std::array<level_t, max_pattern_bits> patch{};
  for ( int oy = 0; oy < frame.height; ++oy )
  {
    int const y = oy + frame.y0;
    for ( int ox = 0; ox < frame.width; ++ox )
    {
      int const x = ox + frame.x0;
      for ( std::size_t i = 0; i < w.size(); ++i )
        patch[i] = detail::read_pixel<level_t>( img, x + w[i].dx, y + w[i].dy, border );
      out( ox, oy ) = static_cast<level_t>( detail::stack_sum( op.base, patch.data(), w.size(), op.max_level ) );
    }
  }
  return out;
}

struct LipschitzGap
{
  level_t sup_diff = 0;      ///< max |psi(f) - psi(g)|
  std::uint64_t l1_diff = 0; ///< sum |f - g|
};

/// Both sides of the 1-Lipschitz bound; callers check sup_diff <= l1_diff.
inline LipschitzGap lipschitz_gap( const StackOperator& op, const GreyImage& f, const GreyImage& g,
                                   BorderPolicy border = BorderPolicy::zero_pad )
{
  if ( !f.same_shape( g ) || f.max_level() != g.max_level() )
    throw dimension_error( "lipschitz gap needs images of equal shape and max level" );
  return { sup_distance( apply_stack( op, f, border ), apply_stack( op, g, border ) ), l1_distance( f, g ) };
}

using AnyOperator = std::variant<SetOperator, StackOperator>;
using AnyImage = std::variant<BinaryImage, GreyImage>;

/// Left-to-right application. Set operators act on binary images, stack operators on grey ones.
inline AnyImage compose( std::span<const AnyOperator> ops, AnyImage img,
                         BorderPolicy border = BorderPolicy::zero_pad )
{
  std::size_t stage = 0;
  for ( auto const& op : ops )
  {
    img = std::visit(
        [&]( auto const& o, auto const& im ) -> AnyImage {
          using O = std::decay_t<decltype( o )>;
          using I = std::decay_t<decltype( im )>;
          if constexpr ( std::is_same_v<O, SetOperator> && std::is_same_v<I, BinaryImage> )
            return apply_set( o, im, border );
          else if constexpr ( std::is_same_v<O, StackOperator> && std::is_same_v<I, GreyImage> )
          {
            if ( o.max_level != im.max_level() )
              throw composition_error( "stage " + std::to_string( stage ) + ": max level " +
                                       std::to_string( o.max_level ) + " does not match image max level " +
                                       std::to_string( im.max_level() ) );
            return apply_stack( o, im, border );
          }
          else
            throw composition_error( "stage " + std::to_string( stage ) +
                                     ": set operators take binary images, stack operators grey images" );
        },
        op, img );
    ++stage;
  }
  return img;
}

} // namespace stackmorph
