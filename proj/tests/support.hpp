#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <stackmorph/stackmorph.hpp>

namespace stackmorph::test
{

/// Binary pattern from its MSB-first text, e.g. "01" = index 1.
inline BinaryPattern bp( const std::string& s )
{
  std::uint32_t v = 0;
  for ( char c : s )
    v = ( v << 1 ) | ( c == '1' ? 1u : 0u );
  return { s.size(), v };
}

inline GreyPattern gp( std::vector<level_t> levels, int m ) { return { std::move( levels ), m }; }

inline Window line( int n ) { return Window::rectangle( 1, n ); }

// Hand-rolled generators for the property tests.

inline int pick( std::mt19937_64& rng, int lo, int hi )
{
  return lo + static_cast<int>( rng() % static_cast<std::uint64_t>( hi - lo + 1 ) );
}

inline BinaryPattern random_binary_pattern( std::mt19937_64& rng, std::size_t n )
{
  return { n, static_cast<std::uint32_t>( rng() ) & BinaryPattern::full( n ).bits() };
}

inline GreyPattern random_grey_pattern( std::mt19937_64& rng, std::size_t n, int m )
{
  std::vector<level_t> v( n );
  for ( auto& x : v )
    x = static_cast<level_t>( pick( rng, 0, m ) );
  return { std::move( v ), m };
}

inline SetOperator random_op( std::mt19937_64& rng, const Window& w )
{
  SetOperator op( w );
  for ( std::uint64_t i = 0; i < op.table_size(); ++i )
    op.set( static_cast<std::uint32_t>( i ), rng() & 1u );
  return op;
}

inline BinaryImage random_binary_image( std::mt19937_64& rng, int width, int height )
{
  BinaryImage img( width, height );
  for ( auto& v : img.data() )
    v = static_cast<std::uint8_t>( rng() & 1u );
  return img;
}

inline GreyImage random_grey_image( std::mt19937_64& rng, int width, int height, int m )
{
  GreyImage img( width, height, m );
  for ( auto& v : img.data() )
    v = static_cast<level_t>( pick( rng, 0, m ) );
  return img;
}

inline GreyImage grey_row( std::vector<level_t> v, int m )
{
  GreyImage img( static_cast<int>( v.size() ), 1, m );
  for ( std::size_t i = 0; i < v.size(); ++i )
    img[i] = v[i];
  return img;
}

} // namespace stackmorph::test
