#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "../basis.hpp"
#include "../error.hpp"
#include "../set_operator.hpp"

namespace stackmorph::io
{

/// Operator file contents: the characteristic table and the grey range it is meant for.
struct OperatorRecord
{
  SetOperator op;
  int max_level = 255;
};

/// Basis file contents. Set bases have no level; grey bases may carry several levels.
struct BasisRecord
{
  Window window;
  int max_level = 255;
  std::vector<BinaryInterval> set_intervals;
  std::vector<GreyBasis> grey_levels;
};

namespace detail
{

inline char hex_digit( unsigned v ) { return "0123456789abcdef"[v & 15u]; }

inline int hex_value( char c )
{
  if ( c >= '0' && c <= '9' )
    return c - '0';
  if ( c >= 'a' && c <= 'f' )
    return c - 'a' + 10;
  return -1;
}

/// Splits text into lines, remembering each line's byte offset.
struct Line
{
  std::string_view text;
  std::size_t offset;
};

inline std::vector<Line> split_lines( std::string_view s )
{
  std::vector<Line> out;
  std::size_t pos = 0;
  while ( pos < s.size() )
  {
    auto end = s.find( '\n', pos );
    if ( end == std::string_view::npos )
      end = s.size();
    auto line = s.substr( pos, end - pos );
    if ( !line.empty() && line.back() == '\r' )
      line.remove_suffix( 1 );
    if ( !line.empty() && line.front() != '#' )
      out.push_back( { line, pos } );
    pos = end + 1;
  }
  return out;
}

inline std::string_view trim( std::string_view s )
{
  while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' ) )
    s.remove_prefix( 1 );
  while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' ) )
    s.remove_suffix( 1 );
  return s;
}

/// "key: value" -> (key, value); key may carry a bracket suffix like interval[3].
inline std::pair<std::string_view, std::string_view> key_value( const Line& l )
{
  auto const colon = l.text.find( ':' );
  if ( colon == std::string_view::npos )
    throw parse_error( "expected 'key: value'", l.offset );
  return { trim( l.text.substr( 0, colon ) ), trim( l.text.substr( colon + 1 ) ) };
}

inline long parse_int( std::string_view s, std::size_t offset )
{
  if ( s.empty() )
    throw parse_error( "expected an integer", offset );
  bool neg = false;
  std::size_t i = 0;
  if ( s[0] == '-' || s[0] == '+' )
  {
    neg = s[0] == '-';
    i = 1;
  }
  if ( i == s.size() )
    throw parse_error( "expected an integer", offset );
  long v = 0;
  for ( ; i < s.size(); ++i )
  {
    if ( s[i] < '0' || s[i] > '9' )
      throw parse_error( "invalid integer '" + std::string( s ) + "'", offset );
    v = v * 10 + ( s[i] - '0' );
    if ( v > 1'000'000 )
      throw parse_error( "integer out of range", offset );
  }
  return neg ? -v : v;
}

inline std::vector<std::string_view> split_ws( std::string_view s )
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while ( i < s.size() )
  {
    while ( i < s.size() && ( s[i] == ' ' || s[i] == '\t' ) )
      ++i;
    std::size_t j = i;
    while ( j < s.size() && s[j] != ' ' && s[j] != '\t' )
      ++j;
    if ( j > i )
      out.push_back( s.substr( i, j - i ) );
    i = j;
  }
  return out;
}

} // namespace detail

/// "(dy,dx) (dy,dx) ..." in any order; the window sorts them.
inline Window parse_window_offsets( std::string_view s, std::size_t offset = 0 )
{
  std::vector<Offset> pts;
  std::size_t i = 0;
  while ( true )
  {
    while ( i < s.size() && ( s[i] == ' ' || s[i] == '\t' || s[i] == ';' ) )
      ++i;
    if ( i == s.size() )
      break;
    if ( s[i] != '(' )
      throw parse_error( "expected '(' in window offsets", offset + i );
    auto const close = s.find( ')', i );
    auto const comma = s.find( ',', i );
    if ( close == std::string_view::npos || comma == std::string_view::npos || comma > close )
      throw parse_error( "malformed window offset", offset + i );
    auto const dy = detail::parse_int( detail::trim( s.substr( i + 1, comma - i - 1 ) ), offset + i );
    auto const dx = detail::parse_int( detail::trim( s.substr( comma + 1, close - comma - 1 ) ), offset + i );
    pts.push_back( { static_cast<int>( dy ), static_cast<int>( dx ) } );
    i = close + 1;
  }
  try
  {
    return Window( std::move( pts ) );
  }
  catch ( const dimension_error& e )
  {
    throw parse_error( e.what(), offset );
  }
}

/*! \brief Table as lowercase hex of its little-endian bit stream.

  Digit j carries table bits 4j..4j+3, bit 4j being the digit's least
  significant bit. Windows of one point still use one digit.
*/
inline std::string table_to_hex( const SetOperator& op )
{
  auto const bits = op.table_size();
  std::size_t const digits = static_cast<std::size_t>( ( bits + 3 ) / 4 );
  std::string s( digits, '0' );
  for ( std::size_t j = 0; j < digits; ++j )
  {
    unsigned v = 0;
    for ( unsigned b = 0; b < 4 && 4 * j + b < bits; ++b )
      v |= static_cast<unsigned>( op( static_cast<std::uint32_t>( 4 * j + b ) ) ) << b;
    s[j] = detail::hex_digit( v );
  }
  return s;
}

inline SetOperator table_from_hex( const Window& w, std::string_view hex, std::size_t offset = 0 )
{
  SetOperator op( w );
  auto const bits = op.table_size();
  std::size_t const digits = static_cast<std::size_t>( ( bits + 3 ) / 4 );
  if ( hex.size() != digits )
    throw parse_error( "table-hex has " + std::to_string( hex.size() ) + " digits, expected " +
                           std::to_string( digits ),
                       offset );
  for ( std::size_t j = 0; j < digits; ++j )
  {
    int const v = detail::hex_value( hex[j] );
    if ( v < 0 )
      throw parse_error( "invalid lowercase hex digit", offset + j );
    for ( unsigned b = 0; b < 4; ++b )
    {
      bool const on = ( v >> b ) & 1;
      if ( 4 * j + b >= bits )
      {
        if ( on )
          throw parse_error( "table-hex sets bits beyond 2^|W| entries", offset + j );
        continue;
      }
      op.set( static_cast<std::uint32_t>( 4 * j + b ), on );
    }
  }
  return op;
}

/// Pattern index as zero-padded lowercase hex, one digit per four window points.
inline std::string pattern_to_hex( const BinaryPattern& p )
{
  std::size_t const digits = std::max<std::size_t>( 1, ( p.size() + 3 ) / 4 );
  std::string s( digits, '0' );
  auto v = p.bits();
  for ( std::size_t j = digits; j-- > 0; )
  {
    s[j] = detail::hex_digit( v & 15u );
    v >>= 4;
  }
  return s;
}

inline BinaryPattern pattern_from_hex( std::size_t size, std::string_view hex, std::size_t offset = 0 )
{
  if ( hex.empty() || hex.size() > 8 )
    throw parse_error( "bad pattern hex '" + std::string( hex ) + "'", offset );
  std::uint32_t v = 0;
  for ( char c : hex )
  {
    int const d = detail::hex_value( c );
    if ( d < 0 )
      throw parse_error( "invalid lowercase hex digit in pattern", offset );
    v = ( v << 4 ) | static_cast<std::uint32_t>( d );
  }
  try
  {
    return BinaryPattern( size, v );
  }
  catch ( const dimension_error& e )
  {
    throw parse_error( e.what(), offset );
  }
}

inline std::string write_operator( const SetOperator& op, int max_level )
{
  std::ostringstream os;
  os << "stackmorph-op v1\n";
  os << "window: " << op.window().to_string() << '\n';
  os << "m: " << max_level << '\n';
  os << "table-hex: " << table_to_hex( op ) << '\n';
  return os.str();
}

inline OperatorRecord read_operator( std::string_view text )
{
  auto const lines = detail::split_lines( text );
  if ( lines.empty() || detail::trim( lines[0].text ) != "stackmorph-op v1" )
    throw parse_error( "expected header 'stackmorph-op v1'", 0 );
  std::optional<Window> window;
  std::optional<long> m;
  std::optional<detail::Line> table;
  for ( std::size_t i = 1; i < lines.size(); ++i )
  {
    auto const [key, value] = detail::key_value( lines[i] );
    auto const value_offset = lines[i].offset + static_cast<std::size_t>( value.data() - lines[i].text.data() );
    if ( key == "window" )
      window = parse_window_offsets( value, value_offset );
    else if ( key == "m" )
      m = detail::parse_int( value, value_offset );
    else if ( key == "table-hex" )
      table = detail::Line{ value, value_offset };
    else
      throw parse_error( "unknown key '" + std::string( key ) + "'", lines[i].offset );
  }
  if ( !window || !m || !table )
    throw parse_error( "operator file needs window, m and table-hex lines", text.size() );
  if ( *m < 1 || *m > 65535 )
    throw parse_error( "m must be in 1..65535", text.size() );
  if ( window->size() > max_table_window )
    throw parse_error( "window too large for a lookup table", 0 );
  return { table_from_hex( *window, table->text, table->offset ), static_cast<int>( *m ) };
}

namespace detail
{
inline std::string levels_to_string( const GreyPattern& p )
{
  std::string s;
  for ( std::size_t i = 0; i < p.size(); ++i )
    s += ( i ? "," : "" ) + std::to_string( p[i] );
  return s;
}

inline GreyPattern levels_from_string( std::string_view s, std::size_t size, int m, std::size_t offset )
{
  std::vector<level_t> v;
  std::size_t i = 0;
  while ( i <= s.size() )
  {
    auto j = s.find( ',', i );
    if ( j == std::string_view::npos )
      j = s.size();
    auto const x = parse_int( s.substr( i, j - i ), offset );
    if ( x < 0 || x > m )
      throw parse_error( "grey level out of range", offset );
    v.push_back( static_cast<level_t>( x ) );
    i = j + 1;
  }
  if ( v.size() != size )
    throw parse_error( "grey pattern has " + std::to_string( v.size() ) + " levels, window has " +
                           std::to_string( size ),
                       offset );
  return GreyPattern( std::move( v ), m );
}
} // namespace detail

inline std::string write_basis( const SetBasis& b, int max_level )
{
  std::ostringstream os;
  os << "stackmorph-basis v1\n";
  os << "window: " << b.window.to_string() << '\n';
  os << "m: " << max_level << '\n';
  for ( auto const& iv : b.intervals )
    os << "interval: " << pattern_to_hex( iv.lower ) << ' ' << pattern_to_hex( iv.upper ) << '\n';
  return os.str();
}

inline std::string write_basis( const std::vector<GreyBasis>& levels )
{
  if ( levels.empty() )
    throw domain_error( "grey basis file needs at least one level" );
  std::ostringstream os;
  os << "stackmorph-basis v1\n";
  os << "window: " << levels.front().window.to_string() << '\n';
  os << "m: " << levels.front().max_level << '\n';
  for ( auto const& lvl : levels )
    for ( auto const& iv : lvl.intervals )
      os << "interval[" << lvl.level << "]: " << detail::levels_to_string( iv.lower ) << ' '
         << detail::levels_to_string( iv.upper ) << '\n';
  return os.str();
}

inline BasisRecord read_basis( std::string_view text )
{
  auto const lines = detail::split_lines( text );
  if ( lines.empty() || detail::trim( lines[0].text ) != "stackmorph-basis v1" )
    throw parse_error( "expected header 'stackmorph-basis v1'", 0 );
  BasisRecord rec;
  bool have_window = false;
  for ( std::size_t i = 1; i < lines.size(); ++i )
  {
    auto const [key, value] = detail::key_value( lines[i] );
    auto const off = lines[i].offset;
    if ( key == "window" )
    {
      rec.window = parse_window_offsets( value, off );
      have_window = true;
      continue;
    }
    if ( key == "m" )
    {
      auto const m = detail::parse_int( value, off );
      if ( m < 1 || m > 65535 )
        throw parse_error( "m must be in 1..65535", off );
      rec.max_level = static_cast<int>( m );
      continue;
    }
    if ( !have_window )
      throw parse_error( "window line must precede intervals", off );
    auto const parts = detail::split_ws( value );
    if ( parts.size() != 2 )
      throw parse_error( "interval needs two bounds", off );
    if ( key == "interval" )
    {
      rec.set_intervals.push_back( { pattern_from_hex( rec.window.size(), parts[0], off ),
                                     pattern_from_hex( rec.window.size(), parts[1], off ) } );
    }
    else if ( key.starts_with( "interval[" ) && key.ends_with( "]" ) )
    {
      auto const t = detail::parse_int( key.substr( 9, key.size() - 10 ), off );
      if ( t < 1 || t > rec.max_level )
        throw parse_error( "interval level out of range", off );
      if ( rec.grey_levels.empty() || rec.grey_levels.back().level != t )
        rec.grey_levels.push_back( GreyBasis{ rec.window, rec.max_level, static_cast<int>( t ), {} } );
      rec.grey_levels.back().intervals.push_back(
          { detail::levels_from_string( parts[0], rec.window.size(), rec.max_level, off ),
            detail::levels_from_string( parts[1], rec.window.size(), rec.max_level, off ) } );
    }
    else
      throw parse_error( "unknown key '" + std::string( key ) + "'", off );
  }
  if ( !have_window )
    throw parse_error( "basis file needs a window line", text.size() );
  if ( !rec.set_intervals.empty() && !rec.grey_levels.empty() )
    throw parse_error( "basis file mixes binary and grey intervals", 0 );
  return rec;
}

} // namespace stackmorph::io
