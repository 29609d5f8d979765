#pragma once

#include <algorithm>
#include <array>
#include <cstdint>

#include "set_operator.hpp"
#include "threshold.hpp"

namespace stackmorph
{

/*! \brief Stack extension of a set W-operator for levels 0..max_level.

  Its characteristic function is f -> sum_{t=1..m} phi(T_t[f]), which lies in
  0..m and equals m*phi(X) on grey binary patterns f = m*X.
*/
struct StackOperator
{
  SetOperator base;
  int max_level = 255;

  StackOperator() = default;
  StackOperator( SetOperator b, int m ) : base( std::move( b ) ), max_level( m )
  {
    if ( m < 1 || m > 65535 )
      throw domain_error( "max level must be in 1..65535" );
  }

  const Window& window() const noexcept { return base.window(); }

  friend bool operator==( const StackOperator&, const StackOperator& ) = default;
};

namespace detail
{

/*! Sum of phi over the m cross-sections of a patch, grouping equal sections.

  Between two consecutive distinct levels of the patch the cross-section is
  constant, so the sum only needs one table lookup per distinct level plus
  one for the empty section above the maximum.
*/
inline int stack_sum( const SetOperator& op, const level_t* values, std::size_t n, int m )
{
  std::array<std::uint8_t, max_pattern_bits> order{};
  for ( std::size_t i = 0; i < n; ++i )
    order[i] = static_cast<std::uint8_t>( i );
  // insertion sort by decreasing level; n <= 25
  for ( std::size_t i = 1; i < n; ++i )
  {
    auto const key = order[i];
    std::size_t j = i;
    while ( j > 0 && values[order[j - 1]] < values[key] )
    {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = key;
  }

  int sum = 0;
  if ( op( 0u ) )
    sum += m - values[order[0]];
  std::uint32_t mask = 0;
  std::size_t k = 0;
  while ( k < n )
  {
    level_t const v = values[order[k]];
    if ( v == 0 )
      break;
    while ( k < n && values[order[k]] == v )
      mask |= 1u << order[k++];
    level_t const next = k < n ? values[order[k]] : 0;
    if ( op( mask ) )
      sum += v - next;
  }
  return sum;
}

} // namespace detail

/// phi(f) = sum_{t=1..m} phi~(T_t[f]).
inline int eval_stack( const StackOperator& op, const GreyPattern& f )
{
  if ( f.size() != op.base.arity() )
    throw dimension_error( "grey pattern size does not match the operator window" );
  if ( f.max_level() != op.max_level )
    throw domain_error( "pattern max level " + std::to_string( f.max_level() ) + " differs from operator max level " +
                        std::to_string( op.max_level ) );
  return detail::stack_sum( op.base, f.levels().data(), f.size(), op.max_level );
}

} // namespace stackmorph
