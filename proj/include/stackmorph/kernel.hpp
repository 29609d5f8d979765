#pragma once

#include <cstdint>
#include <vector>

#include "set_operator.hpp"
#include "threshold.hpp"

namespace stackmorph
{

/// Kernel of a set W-operator: the patterns mapped to 1, kept as the table's bit vector.
class SetKernel
{
public:
  SetKernel() = default;
  explicit SetKernel( SetOperator indicator ) : indicator_( std::move( indicator ) ) {}

  const Window& window() const noexcept { return indicator_.window(); }
  bool contains( const BinaryPattern& p ) const { return eval_set( indicator_, p ); }
  bool contains( std::uint32_t index ) const { return indicator_( index ); }
  std::uint64_t size() const { return indicator_.count_ones(); }
  const SetOperator& indicator() const noexcept { return indicator_; }

  std::vector<BinaryPattern> members() const
  {
    std::vector<BinaryPattern> out;
    for ( std::uint64_t i = 0; i < indicator_.table_size(); ++i )
      if ( indicator_( static_cast<std::uint32_t>( i ) ) )
        out.emplace_back( window().size(), static_cast<std::uint32_t>( i ) );
    return out;
  }

  friend bool operator==( const SetKernel&, const SetKernel& ) = default;

private:
  SetOperator indicator_;
};

inline SetKernel kernel_of( const SetOperator& op ) { return SetKernel( op ); }
inline SetOperator table_of( const SetKernel& k ) { return k.indicator(); }

/// Kernel inclusion.
inline bool kernel_subset( const SetKernel& a, const SetKernel& b ) { return leq( a.indicator(), b.indicator() ); }

/*! \brief Level-indexed kernel of a stack operator, as a membership predicate.

  Level t holds the grey patterns f whose operator value is at least t. The
  sets are never materialized; for m = 255 and nine points they would hold
  up to 256^9 patterns.
*/
struct StackKernelView
{
  SetOperator base;
  int max_level = 255;
};

/*! \brief Membership of f in the level-t stack kernel.

  Counts the levels s in 1..m whose cross-section T_s[f] lies in the set
  kernel and compares the count with t.
*/
inline bool stack_kernel_member( const StackKernelView& view, const GreyPattern& f, int t )
{
  detail::require_level( t, view.max_level );
  if ( f.max_level() != view.max_level || f.size() != view.base.arity() )
    throw dimension_error( "grey pattern does not match the stack kernel window or max level" );
  int count = 0;
  for ( int s = 1; s <= view.max_level; ++s )
  {
    std::uint32_t bits = 0;
    for ( std::size_t i = 0; i < f.size(); ++i )
      if ( f[i] >= s )
        bits |= 1u << i;
    count += view.base( bits ) ? 1 : 0;
  }
  return count >= t;
}

/// Set kernel recovered from the top level: X is a member iff m*X is in level m.
inline SetKernel h_inverse( const StackKernelView& view )
{
  auto const& w = view.base.window();
  return SetKernel( SetOperator::from_function( w, [&]( std::uint32_t i ) {
    return stack_kernel_member( view, GreyPattern::embed( BinaryPattern( w.size(), i ), view.max_level ),
                                view.max_level );
  } ) );
}

} // namespace stackmorph
