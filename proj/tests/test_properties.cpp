#include <gtest/gtest.h>

#include "support.hpp"

using namespace stackmorph;
using namespace stackmorph::test;

namespace
{
Window const pair = line( 2 );
SetOperator const and_op( pair, { 0, 0, 0, 1 } );
SetOperator const or_op( pair, { 0, 1, 1, 1 } );
SetOperator const xor_op( pair, { 0, 1, 1, 0 } );
SetOperator const nor_op( pair, { 1, 0, 0, 0 } );

template<typename Fn>
void for_all_ops( std::size_t max_n, Fn&& fn )
{
  for ( std::size_t n = 1; n <= max_n; ++n )
  {
    auto const w = line( static_cast<int>( n ) );
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t( 1 ) << ( 1u << n ) ); ++bits )
      fn( SetOperator::from_bits( w, bits ) );
  }
}

/// Oracle: monotone over every comparable pair.
bool increasing_all_pairs( const SetOperator& op )
{
  for ( std::uint32_t x = 0; x < op.table_size(); ++x )
    for ( std::uint32_t y = 0; y < op.table_size(); ++y )
      if ( ( x & ~y ) == 0 && op( x ) && !op( y ) )
        return false;
  return true;
}
} // namespace

TEST( Increasing, Examples )
{
  EXPECT_TRUE( check_increasing( and_op ).holds );
  EXPECT_FALSE( check_increasing( toolkit::boundary( Window::rectangle( 3, 3 ) ) ).holds );
  auto const x = check_increasing( xor_op );
  EXPECT_FALSE( x.holds );
  ASSERT_TRUE( x.witness );
  EXPECT_EQ( x.witness->first, bp( "01" ) );
  EXPECT_EQ( x.witness->second, bp( "11" ) );
}

TEST( Increasing, SingleBitRaisesMatchAllPairs )
{
  for_all_ops( 3, []( const SetOperator& op ) {
    auto const r = check_increasing( op );
    EXPECT_EQ( r.holds, increasing_all_pairs( op ) );
    if ( !r.holds )
    {
      EXPECT_TRUE( leq( r.witness->first, r.witness->second ) );
      EXPECT_TRUE( eval_set( op, r.witness->first ) );
      EXPECT_FALSE( eval_set( op, r.witness->second ) );
    }
    auto const d = check_decreasing( op );
    EXPECT_EQ( d.holds, increasing_all_pairs( negated( op ) ) );
    if ( !d.holds )
    {
      EXPECT_TRUE( leq( d.witness->first, d.witness->second ) );
      EXPECT_LT( eval_set( op, d.witness->first ), eval_set( op, d.witness->second ) );
    }
  } );
}

TEST( Structural, Examples )
{
  auto const square = Window::rectangle( 3, 3 );
  auto const ero = check_structural( toolkit::erosion( square ) );
  EXPECT_TRUE( ero.holds( Property::erosion ) );
  EXPECT_TRUE( ero.holds( Property::increasing ) );
  EXPECT_TRUE( ero.holds( Property::anti_extensive ) );
  EXPECT_FALSE( ero.holds( Property::extensive ) );

  auto const dil = check_structural( toolkit::dilation( square ) );
  EXPECT_TRUE( dil.holds( Property::dilation ) );
  EXPECT_TRUE( dil.holds( Property::extensive ) );
  EXPECT_FALSE( dil.holds( Property::erosion ) );

  auto const id = check_structural( toolkit::identity( square ) );
  for ( auto p : { Property::erosion, Property::dilation, Property::extensive, Property::anti_extensive,
                   Property::increasing, Property::sup_generating, Property::inf_generating } )
    EXPECT_TRUE( id.holds( p ) ) << name( p );
  EXPECT_FALSE( id.holds( Property::decreasing ) );
}

TEST( Structural, ExtensiveNotApplicableWithoutOrigin )
{
  SetOperator const shifted( Window( { { 0, 1 } } ), { 0, 1 } );
  auto const r = check_structural( shifted );
  EXPECT_EQ( r[Property::extensive].verdict, Verdict::not_applicable );
  EXPECT_EQ( r[Property::anti_extensive].verdict, Verdict::not_applicable );
  EXPECT_EQ( grey_side_properties( shifted, 2 )[static_cast<std::size_t>( Property::extensive )], Verdict::not_applicable );
}

TEST( Algebraic, Examples )
{
  EXPECT_TRUE( check_algebraic( and_op, Property::erosion ).holds );
  auto const r = check_algebraic( or_op, Property::erosion );
  EXPECT_FALSE( r.holds );
  ASSERT_TRUE( r.witness );
  EXPECT_EQ( r.witness->first, bp( "01" ) );
  EXPECT_EQ( r.witness->second, bp( "10" ) );
  EXPECT_TRUE( check_algebraic( nor_op, Property::anti_dilation ).holds );
  EXPECT_THROW( check_algebraic( and_op, Property::increasing ), domain_error );
  EXPECT_THROW( check_algebraic( SetOperator( Window::rectangle( 2, 5 ) ), Property::erosion ), capacity_error );
}

TEST( Algebraic, AgreesWithStructuralExhaustively )
{
  for_all_ops( 3, []( const SetOperator& op ) {
    auto const rep = check_structural( op );
    for ( auto p : { Property::erosion, Property::dilation, Property::anti_dilation, Property::anti_erosion } )
      EXPECT_EQ( check_algebraic( op, p ).holds, rep.holds( p ) ) << name( p ) << " table " << op.words()[0];
  } );
}

TEST( Structural, DualityAndImplications )
{
  for_all_ops( 3, []( const SetOperator& op ) {
    auto const rep = check_structural( op );
    auto const drep = check_structural( dual( op ) );
    EXPECT_EQ( rep.holds( Property::dilation ), drep.holds( Property::erosion ) );
    EXPECT_EQ( rep.holds( Property::anti_erosion ), drep.holds( Property::anti_dilation ) );
    EXPECT_EQ( rep.holds( Property::inf_generating ), drep.holds( Property::sup_generating ) );
    if ( rep.holds( Property::erosion ) || rep.holds( Property::dilation ) )
      EXPECT_TRUE( rep.holds( Property::increasing ) );
    if ( rep.holds( Property::anti_erosion ) || rep.holds( Property::anti_dilation ) )
      EXPECT_TRUE( rep.holds( Property::decreasing ) );
    auto const b = basis_of( kernel_of( op ) );
    EXPECT_EQ( rep.holds( Property::sup_generating ), b.intervals.size() == 1 );
  } );
}

TEST( Structural, SupGeneratingIsErosionMeetAntiDilation )
{
  for_all_ops( 3, []( const SetOperator& op ) {
    auto const b = basis_of( kernel_of( op ) );
    if ( b.intervals.size() != 1 )
      return;
    auto const& iv = b.intervals[0];
    auto const full = BinaryPattern::full( op.arity() );
    auto const ero = operator_from_basis( { op.window(), { { iv.lower, full } } } );
    auto const adil = operator_from_basis( { op.window(), { { BinaryPattern::empty( op.arity() ), iv.upper } } } );
    EXPECT_TRUE( check_structural( ero ).holds( Property::erosion ) );
    EXPECT_TRUE( check_structural( adil ).holds( Property::anti_dilation ) );
    for ( std::uint32_t x = 0; x < op.table_size(); ++x )
      EXPECT_EQ( op( x ), ero( x ) && adil( x ) );
  } );
}

TEST( Report, GoldenRender )
{
  std::string const expected = "property        value  witness\n"
                               "increasing      yes  \n"
                               "decreasing      no     0x2 0x3\n"
                               "extensive       no     0x1 0x1\n"
                               "anti_extensive  yes  \n"
                               "erosion         yes  \n"
                               "dilation        no     0x1 0x2\n"
                               "anti_dilation   no     0x0 0x3\n"
                               "anti_erosion    no     0x0 0x3\n"
                               "sup_generating  yes  \n"
                               "inf_generating  no   \n";
  EXPECT_EQ( check_structural( and_op ).render(), expected );
}

TEST( Inheritance, IdentityAndBoundary )
{
  SetOperator const id( Window( { { 0, 0 } } ), { 0, 1 } );
  for ( int m = 1; m <= 3; ++m )
    EXPECT_TRUE( verify_stack_inheritance( id, m ).all_match() );
  auto const b = toolkit::boundary( line( 3 ) );
  auto const rep = verify_stack_inheritance( b, 2 );
  EXPECT_EQ( rep.set_side[0], Verdict::fails );
  EXPECT_EQ( rep.grey_side[0], Verdict::fails );
}

// Eight of the ten flags transfer for every operator. Sup-generating transfers
// exactly when the single kernel interval is [X, W] or [0, Y] (or m = 1), and
// inf-generating likewise for the dual.
TEST( Inheritance, EightFlagsAlwaysMatchAndIntervalFlagsFollowTheirShape )
{
  auto interval_shape_ok = []( const SetOperator& o ) {
    auto const b = basis_of( kernel_of( o ) );
    if ( b.intervals.size() != 1 )
      return true;
    return b.intervals[0].lower.bits() == 0 || b.intervals[0].upper.bits() == o.window().full_mask();
  };
  auto check = [&]( const SetOperator& op, int m ) {
    auto const rep = verify_stack_inheritance( op, m );
    for ( auto p : all_properties )
    {
      if ( p == Property::sup_generating || p == Property::inf_generating )
        continue;
      EXPECT_TRUE( rep.matches( p ) ) << name( p ) << " table " << op.words()[0] << " m " << m;
    }
    bool const sup_expected = m == 1 || interval_shape_ok( op );
    bool const inf_expected = m == 1 || interval_shape_ok( dual( op ) );
    EXPECT_EQ( rep.matches( Property::sup_generating ), sup_expected ) << "table " << op.words()[0] << " m " << m;
    EXPECT_EQ( rep.matches( Property::inf_generating ), inf_expected ) << "table " << op.words()[0] << " m " << m;
  };
  for ( int m = 1; m <= 3; ++m )
    for_all_ops( 2, [&]( const SetOperator& op ) { check( op, m ); } );
  std::mt19937_64 rng( 51 );
  for ( int k = 0; k < 300; ++k )
    check( random_op( rng, line( 3 ) ), 2 );
}

TEST( Inheritance, TwoPointMismatchesAreTheMixedSingletons )
{
  std::vector<std::uint64_t> sup_bad, inf_bad;
  for ( std::uint64_t bits = 0; bits < 16; ++bits )
  {
    auto const rep = verify_stack_inheritance( SetOperator::from_bits( pair, bits ), 2 );
    if ( !rep.matches( Property::sup_generating ) )
      sup_bad.push_back( bits );
    if ( !rep.matches( Property::inf_generating ) )
      inf_bad.push_back( bits );
  }
  EXPECT_EQ( sup_bad, ( std::vector<std::uint64_t>{ 0x2, 0x4 } ) );
  EXPECT_EQ( inf_bad, ( std::vector<std::uint64_t>{ 0xb, 0xd } ) );
}

TEST( StackFilter, Examples )
{
  auto const median = toolkit::median( line( 3 ) );
  EXPECT_TRUE( check_stack_filter( median, 255, 100 ).is_filter );
  EXPECT_TRUE( check_stack_filter( toolkit::identity( line( 3 ) ), 255, 5 ).is_filter );

  auto const boundary = toolkit::boundary( line( 3 ) );
  auto const r = check_stack_filter( boundary, 2, 5 );
  EXPECT_FALSE( r.is_filter );
  ASSERT_TRUE( r.witness );
  EXPECT_TRUE( violates_threshold_commutation( boundary, *r.witness ) );
  EXPECT_THROW( check_stack_filter( median, 2, 0 ), domain_error );
}

TEST( StackFilter, OnePointLevelMeansEveryOperatorCommutes )
{
  for_all_ops( 2, []( const SetOperator& op ) { EXPECT_TRUE( check_stack_filter( op, 1, 3 ).is_filter ); } );
}

TEST( StackFilter, BothDirectionsExhaustive )
{
  for_all_ops( 3, []( const SetOperator& op ) {
    bool const inc = check_increasing( op ).holds;
    for ( int m = 2; m <= 3; ++m )
    {
      bool any_mismatch = false;
      for ( auto const& f : enumerate_grey( op.arity(), m ) )
        any_mismatch = any_mismatch || threshold_mismatch( op, f ).has_value();
      EXPECT_EQ( any_mismatch, !inc ) << "table " << op.words()[0] << " m " << m;
      auto const r = check_stack_filter( op, m, 2 );
      EXPECT_EQ( r.is_filter, inc );
      if ( !inc )
        EXPECT_TRUE( violates_threshold_commutation( op, *r.witness ) );
    }
  } );
}
