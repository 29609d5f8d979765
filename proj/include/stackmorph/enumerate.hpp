#pragma once

#include <cmath>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "pattern.hpp"

namespace stackmorph
{

inline constexpr double default_enumeration_cap = 1e7;

/// Throws capacity_error when (base)^size exceeds `cap`.
inline std::uint64_t require_enumerable( std::uint64_t base, std::size_t size, double cap,
                                          const char* what = "patterns" )
{
  double const count = std::pow( static_cast<double>( base ), static_cast<double>( size ) );
  if ( count > cap )
  {
    throw capacity_error( "enumeration needs " + std::to_string( base ) + "^" + std::to_string( size ) + " = " +
                              std::to_string( static_cast<long double>( count ) ) + " " + what + ", cap is " +
                              std::to_string( static_cast<long double>( cap ) ),
                          count );
  }
  return static_cast<std::uint64_t>( count );
}

/// All binary patterns over a window of `size` points, by increasing index.
inline std::vector<BinaryPattern> enumerate_binary( std::size_t size, double cap = default_enumeration_cap )
{
  auto const n = require_enumerable( 2, size, cap );
  std::vector<BinaryPattern> out;
  out.reserve( n );
  for ( std::uint64_t i = 0; i < n; ++i )
    out.emplace_back( size, static_cast<std::uint32_t>( i ) );
  return out;
}

/*! \brief Range over every grey pattern of a window, in canonical order.

  Canonical order is the mixed-radix counter with position 0 varying fastest,
  i.e. the pattern with levels (v_i) has rank sum_i v_i (m+1)^i. The range
  holds a single odometer and yields references to it.
*/
class GreyPatternRange
{
public:
  GreyPatternRange( std::size_t size, int max_level, double cap = default_enumeration_cap )
      : size_( size ), max_level_( max_level ), count_( require_enumerable( static_cast<std::uint64_t>( max_level ) + 1, size, cap ) )
  {
  }

  class iterator
  {
  public:
    using value_type = GreyPattern;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator( std::size_t size, int m, std::uint64_t rank ) : current_( GreyPattern::constant( size, 0, m ) ), rank_( rank )
    {
      levels_.assign( size, 0 );
    }

    const GreyPattern& operator*() const { return current_; }
    const GreyPattern* operator->() const { return &current_; }

    iterator& operator++()
    {
      ++rank_;
      for ( auto& v : levels_ )
      {
        if ( v < current_.max_level() )
        {
          ++v;
          break;
        }
        v = 0;
      }
      current_ = GreyPattern( levels_, current_.max_level() );
      return *this;
    }

    void operator++( int ) { ++*this; }

    bool operator==( const iterator& o ) const { return rank_ == o.rank_; }

  private:
    GreyPattern current_;
    std::vector<level_t> levels_;
    std::uint64_t rank_ = 0;
  };

  iterator begin() const { return iterator( size_, max_level_, 0 ); }
  iterator end() const { return iterator( size_, max_level_, count_ ); }
  std::uint64_t size() const noexcept { return count_; }

private:
  std::size_t size_;
  int max_level_;
  std::uint64_t count_;
};

inline GreyPatternRange enumerate_grey( std::size_t size, int max_level, double cap = default_enumeration_cap )
{
  return GreyPatternRange( size, max_level, cap );
}

/// Rank of a grey pattern in canonical order.
inline std::uint64_t grey_rank( const GreyPattern& f )
{
  std::uint64_t r = 0;
  for ( std::size_t i = f.size(); i-- > 0; )
    r = r * ( static_cast<std::uint64_t>( f.max_level() ) + 1 ) + f[i];
  return r;
}

inline GreyPattern grey_from_rank( std::uint64_t rank, std::size_t size, int max_level )
{
  std::vector<level_t> v( size );
  for ( std::size_t i = 0; i < size; ++i )
  {
    v[i] = static_cast<level_t>( rank % ( static_cast<std::uint64_t>( max_level ) + 1 ) );
    rank /= static_cast<std::uint64_t>( max_level ) + 1;
  }
  return GreyPattern( std::move( v ), max_level );
}

} // namespace stackmorph
