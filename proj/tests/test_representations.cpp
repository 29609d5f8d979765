#include <gtest/gtest.h>

#include <stackmorph/verify/oracle.hpp>

#include "support.hpp"

using namespace stackmorph;
using namespace stackmorph::test;

namespace
{
Window const pair = line( 2 );
SetOperator const and_op( pair, { 0, 0, 0, 1 } );
SetOperator const or_op( pair, { 0, 1, 1, 1 } );
SetOperator const xor_op( pair, { 0, 1, 1, 0 } );

std::vector<GreyPattern> all_grey( std::size_t n, int m )
{
  std::vector<GreyPattern> out;
  for ( auto const& f : enumerate_grey( n, m ) )
    out.push_back( f );
  return out;
}

/// Oracle: maximal grey boxes inside {f : member(f)}, by trying every pair lo <= hi.
template<typename Member>
std::vector<GreyInterval> grey_max_by_enumeration( std::size_t n, int m, Member member )
{
  auto const all = all_grey( n, m );
  std::vector<GreyInterval> inside;
  for ( auto const& lo : all )
    for ( auto const& hi : all )
    {
      if ( !leq( lo, hi ) )
        continue;
      bool ok = true;
      for ( auto const& f : all )
        if ( leq( lo, f ) && leq( f, hi ) && !member( f ) )
        {
          ok = false;
          break;
        }
      if ( ok )
        inside.push_back( { lo, hi } );
    }
  std::vector<GreyInterval> out;
  for ( auto const& a : inside )
  {
    bool dominated = false;
    for ( auto const& b : inside )
      if ( a != b && leq( b.lower, a.lower ) && leq( a.upper, b.upper ) )
        dominated = true;
    if ( !dominated )
      out.push_back( a );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

SetBasis basis( const Window& w, std::vector<BinaryInterval> ivs ) { return { w, std::move( ivs ) }; }
} // namespace

TEST( Kernel, Examples )
{
  EXPECT_EQ( kernel_of( and_op ).members(), ( std::vector<BinaryPattern>{ bp( "11" ) } ) );
  EXPECT_EQ( kernel_of( SetOperator( pair ) ).size(), 0u );
  EXPECT_EQ( kernel_of( xor_op ).members(), ( std::vector<BinaryPattern>{ bp( "01" ), bp( "10" ) } ) );
}

TEST( Kernel, RoundTripAndOrderExhaustive )
{
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    std::uint64_t const count = std::uint64_t( 1 ) << ( 1u << n );
    for ( std::uint64_t a = 0; a < count; ++a )
    {
      auto const op = SetOperator::from_bits( w, a );
      EXPECT_EQ( table_of( kernel_of( op ) ), op );
      if ( n <= 2 )
        for ( std::uint64_t b = 0; b < count; ++b )
        {
          auto const other = SetOperator::from_bits( w, b );
          EXPECT_EQ( leq( op, other ), kernel_subset( kernel_of( op ), kernel_of( other ) ) );
        }
    }
  }
  // |W| = 3 order check on a sample of pairs
  std::mt19937_64 rng( 41 );
  for ( int k = 0; k < 2000; ++k )
  {
    auto const a = random_op( rng, line( 3 ) );
    auto b = a;
    if ( k % 2 )
      b = random_op( rng, line( 3 ) );
    else
      for ( std::uint32_t i = 0; i < 8; ++i )
        if ( rng() & 1u )
          b.set( i, true );
    EXPECT_EQ( leq( a, b ), kernel_subset( kernel_of( a ), kernel_of( b ) ) );
  }
}

TEST( StackKernel, MembershipExamples )
{
  SetOperator const id( Window( { { 0, 0 } } ), { 0, 1 } );
  for ( int m = 1; m <= 4; ++m )
    for ( int k = 0; k <= m; ++k )
      for ( int t = 1; t <= m; ++t )
        EXPECT_EQ( stack_kernel_member( { id, m }, gp( { static_cast<level_t>( k ) }, m ), t ), k >= t );
  StackKernelView const v{ and_op, 2 };
  EXPECT_TRUE( stack_kernel_member( v, gp( { 2, 1 }, 2 ), 1 ) );
  EXPECT_FALSE( stack_kernel_member( v, gp( { 2, 1 }, 2 ), 2 ) );
  EXPECT_FALSE( stack_kernel_member( v, gp( { 2, 0 }, 2 ), 1 ) );
  EXPECT_THROW( stack_kernel_member( v, gp( { 2, 1 }, 2 ), 3 ), domain_error );
  EXPECT_THROW( stack_kernel_member( v, gp( { 2, 1 }, 3 ), 1 ), dimension_error );
}

TEST( StackKernel, MembershipIsValueThresholdAndDecreasing )
{
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    std::uint64_t const count = std::uint64_t( 1 ) << ( 1u << n );
    for ( int m = 1; m <= 3; ++m )
      for ( std::uint64_t bits = 0; bits < count; ++bits )
      {
        auto const op = SetOperator::from_bits( w, bits );
        for ( auto const& f : enumerate_grey( n, m ) )
        {
          int const value = verify::oracle::stack_value_by_levels( op, f.levels(), m );
          for ( int t = 1; t <= m; ++t )
          {
            bool const member = stack_kernel_member( { op, m }, f, t );
            EXPECT_EQ( member, value >= t );
            if ( t > 1 && member )
              EXPECT_TRUE( stack_kernel_member( { op, m }, f, t - 1 ) );
          }
        }
      }
  }
}

TEST( StackKernel, HInverseRecoversTheSetKernel )
{
  SetOperator const id( Window( { { 0, 0 } } ), { 0, 1 } );
  SetOperator const comp( Window( { { 0, 0 } } ), { 1, 0 } );
  EXPECT_EQ( h_inverse( { id, 5 } ).members(), ( std::vector<BinaryPattern>{ bp( "1" ) } ) );
  EXPECT_EQ( h_inverse( { comp, 5 } ).members(), ( std::vector<BinaryPattern>{ bp( "0" ) } ) );

  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    std::uint64_t const count = std::uint64_t( 1 ) << ( 1u << n );
    for ( int m = 1; m <= 3; ++m )
      for ( std::uint64_t bits = 0; bits < count; ++bits )
      {
        auto const op = SetOperator::from_bits( w, bits );
        EXPECT_EQ( h_inverse( { op, m } ), kernel_of( op ) );
      }
  }
  std::mt19937_64 rng( 42 );
  for ( int k = 0; k < 200; ++k )
  {
    auto const op = random_op( rng, Window::rectangle( 2, 2 ) );
    EXPECT_EQ( h_inverse( { op, pick( rng, 1, 255 ) } ), kernel_of( op ) );
  }
}

TEST( Basis, Examples )
{
  EXPECT_EQ( basis_of( kernel_of( and_op ) ).intervals, ( std::vector<BinaryInterval>{ { bp( "11" ), bp( "11" ) } } ) );
  EXPECT_EQ( basis_of( kernel_of( or_op ) ).intervals,
             ( std::vector<BinaryInterval>{ { bp( "01" ), bp( "11" ) }, { bp( "10" ), bp( "11" ) } } ) );
  EXPECT_EQ( basis_of( kernel_of( xor_op ) ).intervals,
             ( std::vector<BinaryInterval>{ { bp( "01" ), bp( "01" ) }, { bp( "10" ), bp( "10" ) } } ) );
  EXPECT_TRUE( basis_of( kernel_of( SetOperator( pair ) ) ).intervals.empty() );
}

TEST( Basis, MatchesEnumerationOracle )
{
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    std::uint64_t const count = std::uint64_t( 1 ) << ( 1u << n );
    for ( std::uint64_t bits = 0; bits < count; ++bits )
    {
      auto const op = SetOperator::from_bits( w, bits );
      std::vector<verify::oracle::RawInterval> got;
      for ( auto const& iv : basis_of( kernel_of( op ) ).intervals )
        got.emplace_back( iv.lower.bits(), iv.upper.bits() );
      std::sort( got.begin(), got.end() );
      EXPECT_EQ( got, verify::oracle::basis_by_enumeration( op ) ) << "table " << bits;
    }
  }
  std::mt19937_64 rng( 43 );
  for ( int k = 0; k < 100; ++k )
  {
    auto const op = random_op( rng, Window::rectangle( 2, 3 ) );
    std::vector<verify::oracle::RawInterval> got;
    for ( auto const& iv : basis_of( kernel_of( op ) ).intervals )
      got.emplace_back( iv.lower.bits(), iv.upper.bits() );
    std::sort( got.begin(), got.end() );
    EXPECT_EQ( got, verify::oracle::basis_by_enumeration( op ) );
  }
}

TEST( Basis, RoundTripAndAntichainUpToFourPoints )
{
  std::mt19937_64 rng( 44 );
  for ( std::size_t n = 1; n <= 4; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    std::uint64_t const count = std::uint64_t( 1 ) << ( 1u << n );
    std::uint64_t const step = n == 4 ? 97 : 1; // 65536 tables for |W| = 4, stride through them
    for ( std::uint64_t bits = 0; bits < count; bits += step )
    {
      auto const op = SetOperator::from_bits( w, bits );
      auto const b = basis_of( kernel_of( op ) );
      EXPECT_EQ( operator_from_basis( b ), op );
      EXPECT_EQ( basis_of( kernel_from_basis( b ) ), b );
      for ( auto const& iv : b.intervals )
        EXPECT_FALSE( iv.empty() );
      for ( std::size_t i = 0; i < b.intervals.size(); ++i )
        for ( std::size_t j = 0; j < b.intervals.size(); ++j )
          if ( i != j )
            EXPECT_FALSE( interval_subset( b.intervals[i], b.intervals[j] ) );
    }
  }
}

TEST( Basis, OrderMatchesOperatorOrder )
{
  auto const w = line( 2 );
  for ( std::uint64_t a = 0; a < 16; ++a )
    for ( std::uint64_t b = 0; b < 16; ++b )
    {
      auto const x = SetOperator::from_bits( w, a ), y = SetOperator::from_bits( w, b );
      EXPECT_EQ( basis_leq( basis_of( kernel_of( x ) ), basis_of( kernel_of( y ) ) ), leq( x, y ) );
    }
}

TEST( Basis, CapacityAboveTwelvePoints )
{
  EXPECT_THROW( basis_of( kernel_of( SetOperator( Window::rectangle( 1, 13 ) ) ) ), capacity_error );
}

TEST( OperatorFromBasis, Examples )
{
  EXPECT_EQ( operator_from_basis( basis( pair, { { bp( "11" ), bp( "11" ) } } ) ), and_op );
  EXPECT_EQ( operator_from_basis( basis( pair, {} ) ), SetOperator( pair ) );
  EXPECT_EQ( operator_from_basis( basis( pair, { { bp( "00" ), bp( "11" ) } } ) ), SetOperator( pair, { 1, 1, 1, 1 } ) );
}

TEST( StackBasis, FullWindowErosionAtTopLevel )
{
  auto const full = BinaryPattern::full( 9 );
  auto const g = stack_basis_level( basis( Window::rectangle( 3, 3 ), { { full, full } } ), 255, 255 );
  ASSERT_EQ( g.intervals.size(), 1u );
  EXPECT_EQ( g.intervals[0].lower, GreyPattern::constant( 9, 255, 255 ) );
  EXPECT_EQ( g.intervals[0].upper, GreyPattern::constant( 9, 255, 255 ) );
}

TEST( StackBasis, XorLevelOneMatchesEnumeration )
{
  auto const b = basis_of( kernel_of( xor_op ) );
  auto const g = stack_basis_level( b, 2, 1 );
  auto const expected = grey_max_by_enumeration( 2, 2, [&]( const GreyPattern& f ) {
    return verify::oracle::stack_value_by_levels( xor_op, f.levels(), 2 ) >= 1;
  } );
  EXPECT_EQ( g.intervals, expected );
  EXPECT_FALSE( expected.empty() );
}

TEST( StackBasis, EnumeratedLevelsMatchOracleForAllSmallOperators )
{
  for ( std::size_t n = 1; n <= 2; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t( 1 ) << ( 1u << n ) ); ++bits )
    {
      auto const op = SetOperator::from_bits( w, bits );
      auto const b = basis_of( kernel_of( op ) );
      for ( int m = 1; m <= 3; ++m )
        for ( int t = 1; t <= m; ++t )
        {
          auto const expected = grey_max_by_enumeration( n, m, [&]( const GreyPattern& f ) {
            return verify::oracle::stack_value_by_levels( op, f.levels(), m ) >= t;
          } );
          EXPECT_EQ( stack_basis_level( b, m, t ).intervals, expected ) << "table " << bits << " m " << m << " t " << t;
        }
    }
  }
}

TEST( StackBasis, SingleIntervalExactFormMatchesEnumeration )
{
  // every nonempty [X,Y] over windows of up to three points
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    std::uint32_t const full = ( 1u << n ) - 1;
    for ( std::uint32_t y = 0; y <= full; ++y )
      for ( std::uint32_t x = y;; x = ( x - 1 ) & y )
      {
        BinaryInterval const iv{ BinaryPattern( n, x ), BinaryPattern( n, y ) };
        auto const op = operator_from_basis( basis( line( static_cast<int>( n ) ), { iv } ) );
        for ( int m = 1; m <= 3; ++m )
          for ( int t = 1; t <= m; ++t )
          {
            auto const expected = grey_max_by_enumeration( n, m, [&]( const GreyPattern& f ) {
              return verify::oracle::stack_value_by_levels( op, f.levels(), m ) >= t;
            } );
            EXPECT_EQ( single_interval_level( iv, m, t ), expected );
            bool const one_box = x == 0 || y == full || t == m;
            EXPECT_EQ( expected.size() == 1, one_box );
            if ( one_box )
              EXPECT_EQ( expected.front(), single_interval_hull( iv, m, t ) );
          }
        if ( x == 0 )
          break;
      }
  }
}

TEST( StackBasis, HullIsStrictlyLargerForAMixedInterval )
{
  // X = Y = {a} on a two-point window: f = (1,1) is in the hull [tX, tY+(m-t)W]
  // at t = 1, m = 2, but no level s has T_s[f] = {a}.
  BinaryInterval const iv{ bp( "01" ), bp( "01" ) };
  auto const hull = single_interval_hull( iv, 2, 1 );
  EXPECT_EQ( hull.lower, gp( { 1, 0 }, 2 ) );
  EXPECT_EQ( hull.upper, gp( { 2, 1 }, 2 ) );
  auto const f = gp( { 1, 1 }, 2 );
  EXPECT_TRUE( interval_contains( hull, f ) );
  auto const op = operator_from_basis( basis( pair, { iv } ) );
  EXPECT_FALSE( stack_kernel_member( { op, 2 }, f, 1 ) );
  EXPECT_FALSE( stack_basis_member( basis( pair, { iv } ), 2, 1, f ) );
  EXPECT_EQ( single_interval_level( iv, 2, 1 ),
             ( std::vector<GreyInterval>{ { gp( { 1, 0 }, 2 ), gp( { 2, 0 }, 2 ) }, { gp( { 2, 0 }, 2 ), gp( { 2, 1 }, 2 ) } } ) );
}

TEST( StackBasisMember, AgreesWithCountingPredicate )
{
  auto const xb = basis_of( kernel_of( xor_op ) );
  for ( int m = 1; m <= 3; ++m )
    for ( int t = 1; t <= m; ++t )
      for ( auto const& f : enumerate_grey( 2, m ) )
        EXPECT_EQ( stack_basis_member( xb, m, t, f ), stack_kernel_member( { xor_op, m }, f, t ) );

  std::mt19937_64 rng( 45 );
  auto const w = Window::rectangle( 3, 3 );
  for ( int k = 0; k < 200; ++k )
  {
    auto const y = random_binary_pattern( rng, 9 );
    auto const x = meet( y, random_binary_pattern( rng, 9 ) );
    SetBasis const b = basis( w, { { x, y } } );
    auto const op = operator_from_basis( b );
    int const t = pick( rng, 1, 255 );
    for ( int s = 0; s < 20; ++s )
    {
      auto const f = random_grey_pattern( rng, 9, 255 );
      EXPECT_EQ( stack_basis_member( b, 255, t, f ), stack_kernel_member( { op, 255 }, f, t ) );
    }
  }
  // a kernel pattern embedded at level m is in level 1
  EXPECT_TRUE( stack_basis_member( xb, 3, 1, GreyPattern::embed( bp( "01" ), 3 ) ) );
  EXPECT_THROW( stack_basis_member( xb, 3, 4, gp( { 0, 0 }, 3 ) ), domain_error );
}

TEST( StackBasis, CapacityWhenNeitherPathApplies )
{
  auto const b = basis_of( kernel_of( toolkit::median( Window::rectangle( 3, 3 ) ) ) );
  EXPECT_THROW( stack_basis_level( b, 255, 10 ), capacity_error );
  auto const single = basis( Window::rectangle( 3, 3 ), { { bp( "000010000" ), bp( "111111111" ) } } );
  EXPECT_NO_THROW( stack_basis_level( single, 255, 10 ) );
}
