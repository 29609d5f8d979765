#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "../engine.hpp"
#include "../error.hpp"
#include "../io/pgm.hpp"
#include "../io/serialize.hpp"
#include "../threshold.hpp"
#include "builtins.hpp"
#include "noise.hpp"

namespace stackmorph::toolkit
{

/// Runs a chain of set operators on a binary image.
inline BinaryImage run_set_chain( const std::vector<SetOperator>& chain, BinaryImage img, BorderPolicy border )
{
  for ( auto const& op : chain )
    img = apply_set( op, img, border );
  return img;
}

/// Runs the stack extensions of a chain on a grey image.
inline GreyImage run_stack_chain( const std::vector<SetOperator>& chain, GreyImage img, BorderPolicy border )
{
  for ( auto const& op : chain )
    img = apply_stack( StackOperator( op, img.max_level() ), img, border );
  return img;
}

/*! \brief Piecewise-constant test scene.

  The image is split into a 3x3 grid of cells; each cell holds one
  rectangle or disk at a random level, size and position inside the cell.
  Shapes never touch and are at least size/8 across, so features are
  coarser than a 3x3 structuring element. Disks use x^2 + y^2 <= r^2 + r,
  which avoids one-pixel tips on the axes.
*/
inline GreyImage synthetic_scene( int size, int max_level, std::uint64_t seed )
{
  if ( size < 32 )
    throw domain_error( "synthetic scene needs size >= 32" );
  std::mt19937_64 rng( seed );
  auto draw = [&rng]( int lo, int hi ) { return lo + static_cast<int>( rng() % static_cast<std::uint64_t>( hi - lo + 1 ) ); };
  auto level = [&]( int lo_pct, int hi_pct ) {
    return static_cast<level_t>( draw( max_level * lo_pct / 100, max_level * hi_pct / 100 ) );
  };

  GreyImage img( size, size, max_level, level( 12, 20 ) );
  int const cell = size / 3;
  int const gap = 2;
  int const min_side = std::max( 4, size / 8 );
  for ( int cy = 0; cy < 3; ++cy )
    for ( int cx = 0; cx < 3; ++cx )
    {
      int const x_lo = cx * cell + gap, y_lo = cy * cell + gap;
      int const span = cell - 2 * gap; // usable side of the cell
      auto const v = level( 35, 95 );
      if ( rng() >> 63 )
      {
        int const w = draw( min_side, span ), h = draw( min_side, span );
        int const x0 = x_lo + draw( 0, span - w ), y0 = y_lo + draw( 0, span - h );
        for ( int y = y0; y < y0 + h; ++y )
          for ( int x = x0; x < x0 + w; ++x )
            img( x, y ) = v;
      }
      else
      {
        int const r = draw( min_side / 2, ( span - 1 ) / 2 );
        int const ox = x_lo + r + draw( 0, span - 1 - 2 * r ), oy = y_lo + r + draw( 0, span - 1 - 2 * r );
        for ( int y = oy - r; y <= oy + r; ++y )
          for ( int x = ox - r; x <= ox + r; ++x )
            if ( ( x - ox ) * ( x - ox ) + ( y - oy ) * ( y - oy ) <= r * r + r )
              img( x, y ) = v;
      }
    }
  return img;
}

struct Figure1Config
{
  int size = 256;
  int max_level = 255;
  std::uint64_t seed = 1;
  double noise = 0.025;
  AsfOrder order = AsfOrder::opening_closing;
  BorderPolicy border = BorderPolicy::replicate;
};

/// The five panels, each in a binary version (shown as 0/m) and a grey version.
struct Figure1Panels
{
  GreyImage binary[5];
  GreyImage grey[5];
};

/*! \brief Input, corruption, boundary, ASF and ASF-then-boundary panels.

  The binary input is the cross-section of the grey scene at level m/2 + 1,
  embedded as m*X so both rows go through the same stack operators. Noise
  on m*X yields another 0/m image, and the set path equals the stack path
  on it by the extension property.
*/
inline Figure1Panels figure1_panels( const Figure1Config& cfg )
{
  auto const w = Window::rectangle( 3, 3 );
  auto const boundary_chain = builtin( "boundary", w );
  auto const asf_chain = builtin( "asf", w, cfg.order );

  Figure1Panels p;
  p.grey[0] = synthetic_scene( cfg.size, cfg.max_level, cfg.seed );
  p.binary[0] = embed( cross_section( p.grey[0], cfg.max_level / 2 + 1 ), cfg.max_level );

  auto const noise_seed = cfg.seed ^ 0x9e3779b97f4a7c15ull;
  for ( auto* row : { p.binary, p.grey } )
  {
    row[1] = salt_pepper( row[0], cfg.noise, noise_seed );
    row[2] = run_stack_chain( boundary_chain, row[0], cfg.border );
    row[3] = run_stack_chain( asf_chain, row[1], cfg.border );
    row[4] = run_stack_chain( boundary_chain, row[3], cfg.border );
  }
  return p;
}

/// Writes a_binary.pgm ... e_grey.pgm (P5) into `outdir`, creating it if needed.
inline std::vector<std::string> write_figure1( const std::string& outdir, const Figure1Config& cfg )
{
  std::error_code ec;
  std::filesystem::create_directories( outdir, ec );
  if ( ec )
    throw data_error( "cannot create directory '" + outdir + "': " + ec.message() );
  auto const panels = figure1_panels( cfg );
  std::vector<std::string> written;
  for ( int k = 0; k < 5; ++k )
  {
    std::string const tag( 1, static_cast<char>( 'a' + k ) );
    for ( auto [suffix, img] : { std::pair{ "_binary.pgm", &panels.binary[k] }, std::pair{ "_grey.pgm", &panels.grey[k] } } )
    {
      auto const path = ( std::filesystem::path( outdir ) / ( tag + suffix ) ).string();
      io::write_pgm( *img, path, io::PgmFormat::binary );
      written.push_back( path );
    }
  }
  return written;
}

/// One stage of a pipeline file: a builtin chain or an operator file.
struct PipelineStage
{
  std::string description;
  std::vector<SetOperator> chain;
};

struct PipelineConfig
{
  int max_level = 255;
  BorderPolicy border = BorderPolicy::zero_pad;
  std::uint64_t seed = 1;
  double noise = 0.0;
  AsfOrder order = AsfOrder::opening_closing;
  std::vector<PipelineStage> stages;
};

inline BorderPolicy parse_border( std::string_view s )
{
  if ( s == "zero" )
    return BorderPolicy::zero_pad;
  if ( s == "replicate" )
    return BorderPolicy::replicate;
  if ( s == "crop" )
    return BorderPolicy::crop_interior;
  throw usage_error( "border must be zero, replicate or crop, got '" + std::string( s ) + "'" );
}

/*! \brief Parses a pipeline file.

      stackmorph-pipeline v1
      m: 255
      border: replicate
      seed: 7
      noise: 0.025
      op: builtin asf 3x3
      op: file denoise.op

  Relative operator paths resolve against `base_dir`. Every operator file
  must carry the pipeline's m.
*/
inline PipelineConfig parse_pipeline( std::string_view text, const std::string& base_dir = "." )
{
  auto const lines = io::detail::split_lines( text );
  if ( lines.empty() || io::detail::trim( lines[0].text ) != "stackmorph-pipeline v1" )
    throw parse_error( "expected header 'stackmorph-pipeline v1'", 0 );
  PipelineConfig cfg;
  std::vector<std::pair<std::vector<std::string_view>, std::size_t>> ops;
  for ( std::size_t i = 1; i < lines.size(); ++i )
  {
    auto const [key, value] = io::detail::key_value( lines[i] );
    auto const off = lines[i].offset;
    if ( key == "m" )
    {
      auto const m = io::detail::parse_int( value, off );
      if ( m < 1 || m > 65535 )
        throw parse_error( "m must be in 1..65535", off );
      cfg.max_level = static_cast<int>( m );
    }
    else if ( key == "border" )
    {
      try
      {
        cfg.border = parse_border( value );
      }
      catch ( const usage_error& e )
      {
        throw parse_error( e.what(), off );
      }
    }
    else if ( key == "seed" )
      cfg.seed = static_cast<std::uint64_t>( io::detail::parse_int( value, off ) );
    else if ( key == "noise" )
    {
      std::string const s( value );
      std::size_t used = 0;
      double p = -1;
      try
      {
        p = std::stod( s, &used );
      }
      catch ( const std::exception& )
      {
        used = 0;
      }
      if ( used != s.size() || !( p >= 0.0 && p <= 1.0 ) )
        throw parse_error( "noise must be a number in [0,1]", off );
      cfg.noise = p;
    }
    else if ( key == "asf-order" )
    {
      try
      {
        cfg.order = parse_asf_order( value );
      }
      catch ( const usage_error& e )
      {
        throw parse_error( e.what(), off );
      }
    }
    else if ( key == "op" )
      ops.emplace_back( io::detail::split_ws( value ), off );
    else
      throw parse_error( "unknown key '" + std::string( key ) + "'", off );
  }

  // Stages are built after all keys so asf-order may appear anywhere.
  for ( auto const& [parts, off] : ops )
  {
    if ( parts.size() == 3 && parts[0] == "builtin" )
    {
      try
      {
        cfg.stages.push_back( { "builtin " + std::string( parts[1] ) + " " + std::string( parts[2] ),
                                builtin( parts[1], parse_window( parts[2] ), cfg.order ) } );
      }
      catch ( const usage_error& e )
      {
        throw parse_error( e.what(), off );
      }
    }
    else if ( parts.size() == 2 && parts[0] == "file" )
    {
      auto path = std::filesystem::path( std::string( parts[1] ) );
      if ( path.is_relative() )
        path = std::filesystem::path( base_dir ) / path;
      auto rec = io::read_operator( io::read_file( path.string() ) );
      if ( rec.max_level != cfg.max_level )
        throw composition_error( "operator file '" + path.string() + "' has m = " + std::to_string( rec.max_level ) +
                                 ", pipeline has m = " + std::to_string( cfg.max_level ) );
      cfg.stages.push_back( { "file " + path.string(), { std::move( rec.op ) } } );
    }
    else
      throw parse_error( "op must be 'builtin NAME WINDOW' or 'file PATH'", off );
  }
  return cfg;
}

/// Noise (when p > 0) followed by every stage's stack extension.
inline GreyImage run_pipeline( const PipelineConfig& cfg, const GreyImage& input )
{
  if ( input.max_level() != cfg.max_level )
    throw composition_error( "input max level " + std::to_string( input.max_level() ) + " differs from pipeline m = " +
                             std::to_string( cfg.max_level ) );
  GreyImage img = cfg.noise > 0 ? salt_pepper( input, cfg.noise, cfg.seed ) : input;
  for ( auto const& stage : cfg.stages )
    img = run_stack_chain( stage.chain, std::move( img ), cfg.border );
  return img;
}

} // namespace stackmorph::toolkit
