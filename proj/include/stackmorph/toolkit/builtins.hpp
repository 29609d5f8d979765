#pragma once

#include <bit>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "../error.hpp"
#include "../io/serialize.hpp"
#include "../set_operator.hpp"

namespace stackmorph::toolkit
{

enum class AsfOrder
{
  opening_closing,
  closing_opening
};

inline AsfOrder parse_asf_order( std::string_view s )
{
  if ( s == "oc" )
    return AsfOrder::opening_closing;
  if ( s == "co" )
    return AsfOrder::closing_opening;
  throw usage_error( "asf order must be 'oc' or 'co', got '" + std::string( s ) + "'" );
}

inline std::string_view to_string( AsfOrder o ) { return o == AsfOrder::opening_closing ? "oc" : "co"; }

/// Named window (3x3, 5x5, RxC, cross, line3, vline3) or an explicit "(dy,dx) ..." list.
inline Window parse_window( std::string_view s )
{
  if ( s == "cross" )
    return Window::cross();
  if ( s == "line3" )
    return Window::rectangle( 1, 3 );
  if ( s == "vline3" )
    return Window::rectangle( 3, 1 );
  if ( !s.empty() && s.front() == '(' )
  {
    try
    {
      return io::parse_window_offsets( s );
    }
    catch ( const parse_error& e )
    {
      throw usage_error( std::string( "bad window: " ) + e.what() );
    }
  }
  auto const x = s.find( 'x' );
  if ( x != std::string_view::npos && x > 0 && x + 1 < s.size() )
  {
    auto digits = []( std::string_view d ) {
      int v = 0;
      if ( d.size() > 2 )
        return -1;
      for ( char c : d )
      {
        if ( !std::isdigit( static_cast<unsigned char>( c ) ) )
          return -1;
        v = v * 10 + ( c - '0' );
      }
      return v;
    };
    int const r = digits( s.substr( 0, x ) );
    int const c = digits( s.substr( x + 1 ) );
    if ( r >= 1 && c >= 1 && r * c <= static_cast<int>( max_pattern_bits ) )
      return Window::rectangle( r, c );
  }
  throw usage_error( "unknown window '" + std::string( s ) + "'" );
}

inline SetOperator erosion( const Window& w )
{
  auto const full = w.full_mask();
  return SetOperator::from_function( w, [full]( std::uint32_t i ) { return i == full; } );
}

/// Dilation by W reads the reflected window: x is set when some x - b, b in W, is set.
inline SetOperator dilation( const Window& w )
{
  return SetOperator::from_function( w.reflected(), []( std::uint32_t i ) { return i != 0; } );
}

inline SetOperator median( const Window& w )
{
  if ( !w.origin_included() )
    throw usage_error( "median needs the origin in the window" );
  auto const n = w.size();
  return SetOperator::from_function( w, [n]( std::uint32_t i ) { return 2 * static_cast<std::size_t>( std::popcount( i ) ) > n; } );
}

/// 1 on every patch that is neither all-zero nor all-one.
inline SetOperator boundary( const Window& w )
{
  if ( !w.origin_included() )
    throw usage_error( "boundary needs the origin in the window" );
  auto const full = w.full_mask();
  return SetOperator::from_function( w, [full]( std::uint32_t i ) { return i != 0 && i != full; } );
}

inline SetOperator identity( const Window& w )
{
  auto const o = w.origin_index();
  if ( !o )
    throw usage_error( "identity needs the origin in the window" );
  return SetOperator::from_function( w, [b = *o]( std::uint32_t i ) { return ( i >> b ) & 1u; } );
}

inline SetOperator complement_op( const Window& w )
{
  auto const o = w.origin_index();
  if ( !o )
    throw usage_error( "complement needs the origin in the window" );
  return SetOperator::from_function( w, [b = *o]( std::uint32_t i ) { return !( ( i >> b ) & 1u ); } );
}

/// A builtin as a chain of W-operators, applied first to last.
inline std::vector<SetOperator> builtin( std::string_view name, const Window& w,
                                         AsfOrder order = AsfOrder::opening_closing )
{
  if ( name == "erosion" )
    return { erosion( w ) };
  if ( name == "dilation" )
    return { dilation( w ) };
  if ( name == "opening" )
    return { erosion( w ), dilation( w ) };
  if ( name == "closing" )
    return { dilation( w ), erosion( w ) };
  if ( name == "asf" )
  {
    if ( order == AsfOrder::opening_closing )
      return { erosion( w ), dilation( w ), dilation( w ), erosion( w ) };
    return { dilation( w ), erosion( w ), erosion( w ), dilation( w ) };
  }
  if ( name == "median" )
    return { median( w ) };
  if ( name == "boundary" )
    return { boundary( w ) };
  if ( name == "identity" )
    return { identity( w ) };
  if ( name == "complement" )
    return { complement_op( w ) };
  throw usage_error( "unknown builtin '" + std::string( name ) + "'" );
}

inline constexpr std::array<std::string_view, 9> builtin_names{ "erosion", "dilation", "opening",
                                                                "closing", "asf",      "median",
                                                                "boundary", "identity", "complement" };

} // namespace stackmorph::toolkit
