#include <gtest/gtest.h>

#include "support.hpp"

using namespace stackmorph;
using namespace stackmorph::test;

TEST( Window, SortsRowMajorAndIndexesBits )
{
  Window const w( { { 1, 0 }, { -1, 0 }, { 0, 1 }, { 0, -1 }, { 0, 0 } } );
  EXPECT_EQ( w, Window::cross() );
  EXPECT_EQ( w[0], ( Offset{ -1, 0 } ) );
  EXPECT_EQ( w[1], ( Offset{ 0, -1 } ) );
  EXPECT_EQ( w.origin_index(), 2u );
  EXPECT_EQ( w.to_string(), "(-1,0) (0,-1) (0,0) (0,1) (1,0)" );
}

TEST( Window, RejectsEmptyDuplicateAndOversized )
{
  EXPECT_THROW( Window( std::vector<Offset>{} ), dimension_error );
  EXPECT_THROW( Window( { { 0, 0 }, { 0, 0 } } ), dimension_error );
  EXPECT_THROW( Window::rectangle( 5, 7 ), dimension_error );
  EXPECT_NO_THROW( Window::rectangle( 4, 8 ) );
  EXPECT_THROW( SetOperator( Window::rectangle( 2, 13 ) ), dimension_error );
}

TEST( Window, RectangleIsCenteredAndReflectionNegates )
{
  auto const w = Window::rectangle( 3, 3 );
  EXPECT_EQ( w.size(), 9u );
  EXPECT_EQ( w.min_dy(), -1 );
  EXPECT_EQ( w.max_dx(), 1 );
  EXPECT_EQ( w.reflected(), w );
  Window const l( { { 0, 0 }, { 0, 1 } } );
  EXPECT_EQ( l.reflected(), Window( { { 0, -1 }, { 0, 0 } } ) );
  EXPECT_FALSE( Window( { { 0, 1 } } ).origin_included() );
}

TEST( Leq, Examples )
{
  EXPECT_TRUE( leq( bp( "00" ), bp( "01" ) ) );
  EXPECT_TRUE( leq( bp( "10" ), bp( "10" ) ) );
  EXPECT_FALSE( leq( bp( "10" ), bp( "01" ) ) );
  EXPECT_FALSE( leq( bp( "01" ), bp( "10" ) ) );
  EXPECT_TRUE( leq( gp( { 0, 1 }, 2 ), gp( { 1, 1 }, 2 ) ) );
  EXPECT_FALSE( leq( gp( { 2, 0 }, 2 ), gp( { 1, 1 }, 2 ) ) );
}

TEST( Leq, MismatchedWindowThrows )
{
  EXPECT_THROW( leq( bp( "01" ), bp( "001" ) ), dimension_error );
  EXPECT_THROW( leq( gp( { 0, 1 }, 2 ), gp( { 0, 1, 1 }, 2 ) ), dimension_error );
  EXPECT_THROW( leq( gp( { 0, 1 }, 2 ), gp( { 0, 1 }, 3 ) ), dimension_error );
}

TEST( Patterns, ValidateConstruction )
{
  EXPECT_THROW( BinaryPattern( 2, 4 ), dimension_error );
  EXPECT_THROW( BinaryPattern( 0, 0 ), dimension_error );
  EXPECT_THROW( gp( { 0, 3 }, 2 ), domain_error );
  EXPECT_THROW( gp( {}, 2 ), dimension_error );
  EXPECT_EQ( bp( "011" ).to_string(), "011" );
  EXPECT_EQ( bp( "011" ).bits(), 3u );
  EXPECT_EQ( gp( { 2, 0, 1 }, 2 ).to_string(), "(2,0,1)" );
}

TEST( Leq, PartialOrderLawsOnRandomTriples )
{
  std::mt19937_64 rng( 11 );
  for ( int k = 0; k < 3000; ++k )
  {
    std::size_t const n = static_cast<std::size_t>( pick( rng, 1, 4 ) );
    int const m = pick( rng, 1, 3 );
    auto a = random_grey_pattern( rng, n, m ), b = random_grey_pattern( rng, n, m ), c = random_grey_pattern( rng, n, m );
    EXPECT_TRUE( leq( a, a ) );
    if ( leq( a, b ) && leq( b, a ) )
      EXPECT_EQ( a, b );
    if ( leq( a, b ) && leq( b, c ) )
      EXPECT_TRUE( leq( a, c ) );

    auto x = random_binary_pattern( rng, n ), y = random_binary_pattern( rng, n ), z = random_binary_pattern( rng, n );
    EXPECT_TRUE( leq( x, x ) );
    if ( leq( x, y ) && leq( y, x ) )
      EXPECT_EQ( x, y );
    if ( leq( x, y ) && leq( y, z ) )
      EXPECT_TRUE( leq( x, z ) );
  }
}

TEST( Lattice, MeetJoinComplement )
{
  EXPECT_EQ( meet( bp( "110" ), bp( "011" ) ), bp( "010" ) );
  EXPECT_EQ( join( bp( "100" ), bp( "001" ) ), bp( "101" ) );
  EXPECT_EQ( complement( bp( "100" ) ), bp( "011" ) );
  EXPECT_EQ( meet( gp( { 2, 0 }, 3 ), gp( { 1, 3 }, 3 ) ), gp( { 1, 0 }, 3 ) );
  EXPECT_EQ( join( gp( { 2, 0 }, 3 ), gp( { 1, 3 }, 3 ) ), gp( { 2, 3 }, 3 ) );
  EXPECT_EQ( complement( gp( { 2, 0 }, 3 ) ), gp( { 1, 3 }, 3 ) );
}

TEST( Interval, ContainsExamples )
{
  EXPECT_TRUE( interval_contains( BinaryInterval{ bp( "00" ), bp( "11" ) }, bp( "01" ) ) );
  EXPECT_FALSE( interval_contains( BinaryInterval{ bp( "01" ), bp( "01" ) }, bp( "10" ) ) );
  BinaryInterval const empty{ bp( "11" ), bp( "00" ) };
  EXPECT_TRUE( empty.empty() );
  for ( auto const& p : enumerate_binary( 2 ) )
    EXPECT_FALSE( interval_contains( empty, p ) );
  EXPECT_THROW( interval_contains( BinaryInterval{ bp( "00" ), bp( "11" ) }, bp( "011" ) ), dimension_error );
}

TEST( Interval, ContainsIsTwoComparisonsExhaustively )
{
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const all = enumerate_binary( n );
    for ( auto const& lo : all )
      for ( auto const& hi : all )
        for ( auto const& p : all )
          EXPECT_EQ( interval_contains( BinaryInterval{ lo, hi }, p ), leq( lo, p ) && leq( p, hi ) );
  }
  for ( auto const& lo : enumerate_grey( 2, 2 ) )
    for ( auto const& hi : enumerate_grey( 2, 2 ) )
      for ( auto const& p : enumerate_grey( 2, 2 ) )
        EXPECT_EQ( interval_contains( GreyInterval{ lo, hi }, p ), leq( lo, p ) && leq( p, hi ) );
}

TEST( MaximalElements, Examples )
{
  using V = std::vector<BinaryInterval>;
  EXPECT_EQ( maximal_elements( V{ { bp( "00" ), bp( "01" ) }, { bp( "00" ), bp( "11" ) } } ),
             ( V{ { bp( "00" ), bp( "11" ) } } ) );
  EXPECT_EQ( maximal_elements( V{ { bp( "10" ), bp( "10" ) }, { bp( "01" ), bp( "01" ) } } ),
             ( V{ { bp( "01" ), bp( "01" ) }, { bp( "10" ), bp( "10" ) } } ) );
}

TEST( MaximalElements, NineSubintervalsCollapseToTheTop )
{
  // every nonempty interval of a 2-point window, from brute-force pair enumeration
  std::vector<BinaryInterval> all;
  for ( std::uint32_t a = 0; a < 4; ++a )
    for ( std::uint32_t b = 0; b < 4; ++b )
      if ( ( a & ~b ) == 0 )
        all.push_back( { BinaryPattern( 2, a ), BinaryPattern( 2, b ) } );
  ASSERT_EQ( all.size(), 9u );
  EXPECT_EQ( maximal_elements( all ), ( std::vector<BinaryInterval>{ { bp( "00" ), bp( "11" ) } } ) );
}

TEST( MaximalElements, IdempotentAntichainOnRandomCollections )
{
  std::mt19937_64 rng( 12 );
  for ( int k = 0; k < 500; ++k )
  {
    std::size_t const n = static_cast<std::size_t>( pick( rng, 1, 4 ) );
    std::vector<BinaryInterval> ivs;
    int const count = pick( rng, 0, 8 );
    for ( int i = 0; i < count; ++i )
    {
      auto const a = random_binary_pattern( rng, n );
      ivs.push_back( { a, join( a, random_binary_pattern( rng, n ) ) } );
    }
    auto const once = maximal_elements( ivs );
    EXPECT_EQ( maximal_elements( once ), once );
    EXPECT_TRUE( std::is_sorted( once.begin(), once.end() ) );
    for ( std::size_t i = 0; i < once.size(); ++i )
      for ( std::size_t j = 0; j < once.size(); ++j )
        if ( i != j )
          EXPECT_FALSE( interval_subset( once[i], once[j] ) );
    // every input is covered by some output
    for ( auto const& iv : ivs )
      EXPECT_TRUE( std::any_of( once.begin(), once.end(), [&]( auto const& o ) { return interval_subset( iv, o ); } ) );
  }
}

TEST( MaximalElements, KeepsOneEmptyInterval )
{
  std::vector<BinaryInterval> const ivs{ { bp( "11" ), bp( "00" ) }, { bp( "10" ), bp( "01" ) } };
  EXPECT_EQ( maximal_elements( ivs ).size(), 1u );
}

TEST( Enumerate, CountsAndOrder )
{
  EXPECT_EQ( enumerate_binary( 2 ).size(), 4u );
  auto const grey = enumerate_grey( 2, 2 );
  EXPECT_EQ( grey.size(), 9u );
  std::uint64_t rank = 0;
  std::vector<GreyPattern> seen;
  for ( auto const& f : grey )
  {
    EXPECT_EQ( grey_rank( f ), rank );
    EXPECT_EQ( grey_from_rank( rank, 2, 2 ), f );
    seen.push_back( f );
    ++rank;
  }
  EXPECT_EQ( rank, 9u );
  std::sort( seen.begin(), seen.end() );
  EXPECT_EQ( std::adjacent_find( seen.begin(), seen.end() ), seen.end() );
  EXPECT_EQ( *grey.begin(), gp( { 0, 0 }, 2 ) );
}

TEST( Enumerate, CapacityErrorNamesCount )
{
  try
  {
    enumerate_grey( 3, 255 );
    FAIL() << "expected capacity_error";
  }
  catch ( const capacity_error& e )
  {
    EXPECT_DOUBLE_EQ( e.required(), 16777216.0 );
    EXPECT_NE( std::string( e.what() ).find( "16777216" ), std::string::npos );
  }
  EXPECT_NO_THROW( enumerate_grey( 2, 255 ) );
}
