#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "window.hpp"

namespace stackmorph
{

/// Grey level. Levels live in 0..m with m <= 65535.
using level_t = std::uint16_t;

/*! \brief Binary assignment to the points of a window.

  Packed as an integer index: bit `i` is the value at the `i`-th window
  offset. The index is what lookup tables are addressed with.
*/
class BinaryPattern
{
public:
  BinaryPattern() = default;

  BinaryPattern( std::size_t size, std::uint32_t bits ) : size_( static_cast<std::uint8_t>( size ) ), bits_( bits )
  {
    if ( size == 0 || size > max_pattern_bits )
      throw dimension_error( "binary pattern size must be in 1..32" );
    if ( size < 32 && ( bits >> size ) != 0 )
      throw dimension_error( "pattern index " + std::to_string( bits ) + " has bits outside a window of size " +
                             std::to_string( size ) );
  }

  static BinaryPattern empty( std::size_t size ) { return { size, 0u }; }
  static BinaryPattern full( std::size_t size )
  {
    return { size, size == 32 ? 0xffffffffu : ( ( 1u << size ) - 1u ) };
  }

  std::size_t size() const noexcept { return size_; }
  std::uint32_t bits() const noexcept { return bits_; }
  std::uint32_t mask() const noexcept { return size_ == 32 ? 0xffffffffu : ( ( 1u << size_ ) - 1u ); }

  bool operator[]( std::size_t i ) const { return ( bits_ >> i ) & 1u; }
  std::size_t count() const noexcept { return static_cast<std::size_t>( std::popcount( bits_ ) ); }

  BinaryPattern with( std::size_t i, bool value ) const
  {
    return { size_, value ? ( bits_ | ( 1u << i ) ) : ( bits_ & ~( 1u << i ) ) };
  }

  /// MSB-first bit string: the last window position is the leftmost character.
  std::string to_string() const
  {
    std::string s( size_, '0' );
    for ( std::size_t i = 0; i < size_; ++i )
      if ( ( *this )[i] )
        s[size_ - 1 - i] = '1';
    return s;
  }

  friend bool operator==( const BinaryPattern&, const BinaryPattern& ) = default;
  friend auto operator<=>( const BinaryPattern& a, const BinaryPattern& b )
  {
    if ( auto c = a.size_ <=> b.size_; c != 0 )
      return c;
    return a.bits_ <=> b.bits_;
  }

private:
  std::uint8_t size_ = 1;
  std::uint32_t bits_ = 0;
};

/// Grey-level assignment to the points of a window, levels in 0..max_level.
class GreyPattern
{
public:
  GreyPattern() = default;

  GreyPattern( std::vector<level_t> levels, int max_level ) : levels_( std::move( levels ) ), max_level_( max_level )
  {
    if ( max_level < 1 || max_level > 65535 )
      throw domain_error( "max level must be in 1..65535" );
    if ( levels_.empty() )
      throw dimension_error( "grey pattern must have at least one position" );
    for ( auto v : levels_ )
      if ( v > max_level )
        throw domain_error( "level " + std::to_string( v ) + " exceeds max level " + std::to_string( max_level ) );
  }

  static GreyPattern constant( std::size_t size, level_t value, int max_level )
  {
    return GreyPattern( std::vector<level_t>( size, value ), max_level );
  }

  /// The grey binary pattern m*X.
  static GreyPattern embed( const BinaryPattern& x, int max_level )
  {
    std::vector<level_t> v( x.size() );
    for ( std::size_t i = 0; i < x.size(); ++i )
      v[i] = x[i] ? static_cast<level_t>( max_level ) : 0;
    return GreyPattern( std::move( v ), max_level );
  }

  std::size_t size() const noexcept { return levels_.size(); }
  int max_level() const noexcept { return max_level_; }
  const std::vector<level_t>& levels() const noexcept { return levels_; }
  level_t operator[]( std::size_t i ) const { return levels_[i]; }

  std::uint64_t l1_norm() const
  {
    std::uint64_t s = 0;
    for ( auto v : levels_ )
      s += v;
    return s;
  }

  /// Levels in window order, e.g. "(2,0,1)".
  std::string to_string() const
  {
    std::string s = "(";
    for ( std::size_t i = 0; i < levels_.size(); ++i )
    {
      if ( i )
        s += ',';
      s += std::to_string( levels_[i] );
    }
    return s + ")";
  }

  friend bool operator==( const GreyPattern&, const GreyPattern& ) = default;
  friend auto operator<=>( const GreyPattern& a, const GreyPattern& b )
  {
    if ( auto c = a.max_level_ <=> b.max_level_; c != 0 )
      return c;
    return a.levels_ <=> b.levels_;
  }

private:
  std::vector<level_t> levels_{ 0 };
  int max_level_ = 1;
};

namespace detail
{
inline void require_same( const BinaryPattern& a, const BinaryPattern& b )
{
  if ( a.size() != b.size() )
    throw dimension_error( "binary patterns over windows of size " + std::to_string( a.size() ) + " and " +
                           std::to_string( b.size() ) );
}

inline void require_same( const GreyPattern& a, const GreyPattern& b )
{
  if ( a.size() != b.size() || a.max_level() != b.max_level() )
    throw dimension_error( "grey patterns differ in window size or max level" );
}
} // namespace detail

/// Point-wise order.
inline bool leq( const BinaryPattern& a, const BinaryPattern& b )
{
  detail::require_same( a, b );
  return ( a.bits() & ~b.bits() ) == 0;
}

inline bool leq( const GreyPattern& a, const GreyPattern& b )
{
  detail::require_same( a, b );
  for ( std::size_t i = 0; i < a.size(); ++i )
    if ( a[i] > b[i] )
      return false;
  return true;
}

inline BinaryPattern meet( const BinaryPattern& a, const BinaryPattern& b )
{
  detail::require_same( a, b );
  return { a.size(), a.bits() & b.bits() };
}

inline BinaryPattern join( const BinaryPattern& a, const BinaryPattern& b )
{
  detail::require_same( a, b );
  return { a.size(), a.bits() | b.bits() };
}

inline BinaryPattern complement( const BinaryPattern& a )
{
  return { a.size(), ~a.bits() & a.mask() };
}

inline GreyPattern meet( const GreyPattern& a, const GreyPattern& b )
{
  detail::require_same( a, b );
  std::vector<level_t> v( a.size() );
  for ( std::size_t i = 0; i < a.size(); ++i )
    v[i] = std::min( a[i], b[i] );
  return GreyPattern( std::move( v ), a.max_level() );
}

inline GreyPattern join( const GreyPattern& a, const GreyPattern& b )
{
  detail::require_same( a, b );
  std::vector<level_t> v( a.size() );
  for ( std::size_t i = 0; i < a.size(); ++i )
    v[i] = std::max( a[i], b[i] );
  return GreyPattern( std::move( v ), a.max_level() );
}

/// m - f, point-wise.
inline GreyPattern complement( const GreyPattern& a )
{
  std::vector<level_t> v( a.size() );
  for ( std::size_t i = 0; i < a.size(); ++i )
    v[i] = static_cast<level_t>( a.max_level() - a[i] );
  return GreyPattern( std::move( v ), a.max_level() );
}

} // namespace stackmorph
