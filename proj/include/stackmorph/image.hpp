#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "pattern.hpp"

namespace stackmorph
{

/// Row-major width x height array.
template<typename T>
class Raster
{
public:
  using value_type = T;

  Raster() = default;
  Raster( int width, int height, T fill = T{} ) : width_( width ), height_( height )
  {
    if ( width < 0 || height < 0 )
      throw dimension_error( "image dimensions must be non-negative" );
    data_.assign( static_cast<std::size_t>( width ) * static_cast<std::size_t>( height ), fill );
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()( int x, int y ) { return data_[index( x, y )]; }
  T operator()( int x, int y ) const { return data_[index( x, y )]; }

  T& operator[]( std::size_t i ) { return data_[i]; }
  T operator[]( std::size_t i ) const { return data_[i]; }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool same_shape( const Raster& o ) const noexcept { return width_ == o.width_ && height_ == o.height_; }

  friend bool operator==( const Raster&, const Raster& ) = default;

private:
  std::size_t index( int x, int y ) const
  {
    return static_cast<std::size_t>( y ) * static_cast<std::size_t>( width_ ) + static_cast<std::size_t>( x );
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Binary image; every pixel is 0 or 1.
using BinaryImage = Raster<std::uint8_t>;

/// Grey-scale image with levels in 0..max_level.
class GreyImage : public Raster<level_t>
{
public:
  GreyImage() = default;
  GreyImage( int width, int height, int max_level, level_t fill = 0 ) : Raster<level_t>( width, height, fill ), max_level_( max_level )
  {
    if ( max_level < 1 || max_level > 65535 )
      throw domain_error( "max level must be in 1..65535" );
    if ( fill > max_level )
      throw domain_error( "fill level exceeds max level" );
  }

  int max_level() const noexcept { return max_level_; }

  /// Throws domain_error if any pixel exceeds the max level.
  void validate() const
  {
    for ( std::size_t i = 0; i < pixel_count(); ++i )
      if ( ( *this )[i] > max_level_ )
        throw domain_error( "pixel " + std::to_string( i ) + " exceeds max level " + std::to_string( max_level_ ) );
  }

  friend bool operator==( const GreyImage&, const GreyImage& ) = default;

private:
  int max_level_ = 1;
};

/// The grey-scale binary image m*X.
inline GreyImage embed( const BinaryImage& x, int max_level )
{
  GreyImage out( x.width(), x.height(), max_level );
  for ( std::size_t i = 0; i < x.pixel_count(); ++i )
    out[i] = x[i] ? static_cast<level_t>( max_level ) : 0;
  return out;
}

inline std::uint64_t l1_distance( const GreyImage& f, const GreyImage& g )
{
  if ( !f.same_shape( g ) )
    throw dimension_error( "l1 distance of images with different shapes" );
  std::uint64_t s = 0;
  for ( std::size_t i = 0; i < f.pixel_count(); ++i )
    s += f[i] > g[i] ? f[i] - g[i] : g[i] - f[i];
  return s;
}

inline level_t sup_distance( const GreyImage& f, const GreyImage& g )
{
  if ( !f.same_shape( g ) )
    throw dimension_error( "sup distance of images with different shapes" );
  level_t s = 0;
  for ( std::size_t i = 0; i < f.pixel_count(); ++i )
    s = std::max<level_t>( s, f[i] > g[i] ? f[i] - g[i] : g[i] - f[i] );
  return s;
}

} // namespace stackmorph
