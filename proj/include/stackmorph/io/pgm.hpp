#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "../error.hpp"
#include "../image.hpp"

namespace stackmorph::io
{

enum class PgmFormat
{
  ascii, ///< P2
  binary ///< P5
};

namespace detail
{

class PgmCursor
{
public:
  explicit PgmCursor( std::string_view bytes ) : bytes_( bytes ) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

  /// Skips whitespace and '#' comments.
  void skip_blank()
  {
    while ( pos_ < bytes_.size() )
    {
      char const c = bytes_[pos_];
      if ( c == '#' )
      {
        while ( pos_ < bytes_.size() && bytes_[pos_] != '\n' )
          ++pos_;
      }
      else if ( std::isspace( static_cast<unsigned char>( c ) ) )
        ++pos_;
      else
        break;
    }
  }

  unsigned long number( const char* what )
  {
    skip_blank();
    if ( at_end() )
      throw parse_error( std::string( "unexpected end of file reading " ) + what, pos_ );
    if ( !std::isdigit( static_cast<unsigned char>( bytes_[pos_] ) ) )
      throw parse_error( std::string( "expected a number for " ) + what, pos_ );
    unsigned long v = 0;
    while ( pos_ < bytes_.size() && std::isdigit( static_cast<unsigned char>( bytes_[pos_] ) ) )
    {
      v = v * 10 + static_cast<unsigned long>( bytes_[pos_] - '0' );
      if ( v > 0xffffffffUL )
        throw parse_error( std::string( "number too large for " ) + what, pos_ );
      ++pos_;
    }
    return v;
  }

  unsigned char byte() { return static_cast<unsigned char>( bytes_[pos_++] ); }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  std::string_view take( std::size_t n )
  {
    auto s = bytes_.substr( pos_, n );
    pos_ += n;
    return s;
  }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a P2 or P5 grey map; the image max level is the file's maxval.
inline GreyImage parse_pgm( std::string_view bytes, PgmFormat* format = nullptr )
{
  detail::PgmCursor cur( bytes );
  if ( bytes.size() < 2 || bytes[0] != 'P' || ( bytes[1] != '2' && bytes[1] != '5' ) )
    throw parse_error( "not a PGM file (expected P2 or P5 magic)", 0 );
  bool const binary = bytes[1] == '5';
  if ( format )
    *format = binary ? PgmFormat::binary : PgmFormat::ascii;
  cur.take( 2 );

  auto const width = cur.number( "width" );
  auto const height = cur.number( "height" );
  auto const maxval_offset = cur.offset();
  auto const maxval = cur.number( "maxval" );
  if ( maxval < 1 || maxval > 65535 )
    throw parse_error( "maxval must be in 1..65535", maxval_offset );
  if ( width == 0 || height == 0 || width > 1u << 15 || height > 1u << 15 )
    throw parse_error( "unsupported image dimensions", maxval_offset );

  GreyImage img( static_cast<int>( width ), static_cast<int>( height ), static_cast<int>( maxval ) );
  auto const count = img.pixel_count();

  if ( binary )
  {
    if ( cur.at_end() || !std::isspace( static_cast<unsigned char>( cur.take( 1 )[0] ) ) )
      throw parse_error( "expected a single whitespace byte before the P5 payload", cur.offset() );
    std::size_t const bytes_per = maxval > 255 ? 2 : 1;
    if ( cur.remaining() < count * bytes_per )
      throw parse_error( "truncated payload: need " + std::to_string( count * bytes_per ) + " bytes, have " +
                             std::to_string( cur.remaining() ),
                         cur.offset() );
    for ( std::size_t i = 0; i < count; ++i )
    {
      auto const at = cur.offset();
      unsigned v = cur.byte();
      if ( bytes_per == 2 )
        v = ( v << 8 ) | cur.byte();
      if ( v > maxval )
        throw parse_error( "pixel value " + std::to_string( v ) + " exceeds maxval", at );
      img[i] = static_cast<level_t>( v );
    }
  }
  else
  {
    for ( std::size_t i = 0; i < count; ++i )
    {
      cur.skip_blank();
      auto const at = cur.offset();
      if ( cur.at_end() )
        throw parse_error( "truncated payload: " + std::to_string( i ) + " of " + std::to_string( count ) +
                               " pixels read",
                           at );
      auto const v = cur.number( "pixel" );
      if ( v > maxval )
        throw parse_error( "pixel value " + std::to_string( v ) + " exceeds maxval", at );
      img[i] = static_cast<level_t>( v );
    }
  }
  return img;
}

inline std::string encode_pgm( const GreyImage& img, PgmFormat format )
{
  std::ostringstream os;
  int const maxval = img.max_level();
  if ( format == PgmFormat::binary )
  {
    os << "P5\n" << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
    for ( std::size_t i = 0; i < img.pixel_count(); ++i )
    {
      if ( maxval > 255 )
        os.put( static_cast<char>( img[i] >> 8 ) );
      os.put( static_cast<char>( img[i] & 0xff ) );
    }
  }
  else
  {
    os << "P2\n" << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
    for ( int y = 0; y < img.height(); ++y )
    {
      for ( int x = 0; x < img.width(); ++x )
        os << ( x ? " " : "" ) << img( x, y );
      os << '\n';
    }
  }
  return os.str();
}

inline std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw data_error( "cannot open " + path );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file( const std::string& path, const std::string& contents )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw data_error( "cannot write " + path );
  out << contents;
  if ( !out )
    throw data_error( "failed writing " + path );
}

inline GreyImage read_pgm( const std::string& path ) { return parse_pgm( read_file( path ) ); }

inline void write_pgm( const GreyImage& img, const std::string& path, PgmFormat format = PgmFormat::binary )
{
  write_file( path, encode_pgm( img, format ) );
}

} // namespace stackmorph::io
