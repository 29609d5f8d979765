#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace stackmorph
{

/// A point of the integer plane, used both as window offset and pixel displacement.
struct Offset
{
  int dy = 0;
  int dx = 0;

  friend auto operator<=>( const Offset&, const Offset& ) = default;
};

/// Largest window a binary pattern can address (patterns are packed in 32 bits).
inline constexpr std::size_t max_pattern_bits = 32;

/// Largest window for which a lookup-table operator may be built (2^25 table bits).
inline constexpr std::size_t max_table_window = 25;

/*! \brief Finite set of offsets, stored in canonical row-major order.

  Position `i` of the sorted offset list is bit `i` of every binary pattern
  over this window. The order is fixed at construction and never changes.
*/
class Window
{
public:
  Window() = default;

  explicit Window( std::vector<Offset> offsets ) : offsets_( std::move( offsets ) )
  {
    std::sort( offsets_.begin(), offsets_.end() );
    if ( offsets_.empty() )
    {
      throw dimension_error( "window must contain at least one offset" );
    }
    if ( std::adjacent_find( offsets_.begin(), offsets_.end() ) != offsets_.end() )
    {
      throw dimension_error( "window offsets must be pairwise distinct" );
    }
    if ( offsets_.size() > max_pattern_bits )
    {
      throw dimension_error( "window has " + std::to_string( offsets_.size() ) + " points, limit is " +
                             std::to_string( max_pattern_bits ) );
    }
  }

  /// Centered `rows` x `cols` rectangle. Even sizes put the extra row/column after the origin.
  static Window rectangle( int rows, int cols )
  {
    if ( rows < 1 || cols < 1 )
    {
      throw dimension_error( "rectangle window needs positive sides" );
    }
    std::vector<Offset> pts;
    for ( int dy = -( rows - 1 ) / 2; dy <= rows / 2; ++dy )
      for ( int dx = -( cols - 1 ) / 2; dx <= cols / 2; ++dx )
        pts.push_back( { dy, dx } );
    return Window( std::move( pts ) );
  }

  static Window cross()
  {
    return Window( { { -1, 0 }, { 0, -1 }, { 0, 0 }, { 0, 1 }, { 1, 0 } } );
  }

  std::size_t size() const noexcept { return offsets_.size(); }
  const std::vector<Offset>& offsets() const noexcept { return offsets_; }
  const Offset& operator[]( std::size_t i ) const { return offsets_[i]; }

  /// Bit position of the origin, if the origin belongs to the window.
  std::optional<std::size_t> origin_index() const
  {
    return index_of( { 0, 0 } );
  }

  bool origin_included() const { return origin_index().has_value(); }

  std::optional<std::size_t> index_of( Offset p ) const
  {
    auto it = std::lower_bound( offsets_.begin(), offsets_.end(), p );
    if ( it == offsets_.end() || *it != p )
      return std::nullopt;
    return static_cast<std::size_t>( it - offsets_.begin() );
  }

  /// Mask with one bit per window point.
  std::uint32_t full_mask() const noexcept
  {
    return offsets_.size() == 32 ? 0xffffffffu : ( ( 1u << offsets_.size() ) - 1u );
  }

  Window reflected() const
  {
    std::vector<Offset> pts;
    pts.reserve( offsets_.size() );
    for ( auto const& p : offsets_ )
      pts.push_back( { -p.dy, -p.dx } );
    return Window( std::move( pts ) );
  }

  int min_dy() const { return offsets_.front().dy; }
  int max_dy() const { return offsets_.back().dy; }
  int min_dx() const
  {
    return std::min_element( offsets_.begin(), offsets_.end(), []( auto a, auto b ) { return a.dx < b.dx; } )->dx;
  }
  int max_dx() const
  {
    return std::max_element( offsets_.begin(), offsets_.end(), []( auto a, auto b ) { return a.dx < b.dx; } )->dx;
  }

  std::string to_string() const
  {
    std::string s;
    for ( auto const& p : offsets_ )
    {
      if ( !s.empty() )
        s += ' ';
      s += "(" + std::to_string( p.dy ) + "," + std::to_string( p.dx ) + ")";
    }
    return s;
  }

  friend bool operator==( const Window&, const Window& ) = default;

private:
  std::vector<Offset> offsets_;
};

} // namespace stackmorph
