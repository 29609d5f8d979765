#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "pattern.hpp"
#include "window.hpp"

namespace stackmorph
{

/*! \brief Set W-operator given by its characteristic function.

  The characteristic function is stored as a lookup table of 2^|W| bits,
  entry i being the output for the pattern with index i. Sliding the table
  over a binary image gives the operator on images.
*/
class SetOperator
{
public:
  SetOperator() : SetOperator( Window( { { 0, 0 } } ) ) {}

  /// All-zero table.
  explicit SetOperator( Window window ) : window_( std::move( window ) )
  {
    if ( window_.size() > max_table_window )
      throw dimension_error( "lookup-table operators need |W| <= " + std::to_string( max_table_window ) + ", got " +
                             std::to_string( window_.size() ) );
    words_.assign( ( table_size() + 63 ) / 64, 0u );
  }

  /// Table given entry by entry, e.g. {0,0,0,1} for AND on two points.
  SetOperator( Window window, std::initializer_list<int> table ) : SetOperator( std::move( window ) )
  {
    if ( table.size() != table_size() )
      throw dimension_error( "table has " + std::to_string( table.size() ) + " entries, expected " +
                             std::to_string( table_size() ) );
    std::uint32_t i = 0;
    for ( int b : table )
      set( i++, b != 0 );
  }

  template<typename Fn>
  static SetOperator from_function( Window window, Fn&& fn )
  {
    SetOperator op( std::move( window ) );
    for ( std::uint64_t i = 0; i < op.table_size(); ++i )
      op.set( static_cast<std::uint32_t>( i ), static_cast<bool>( fn( static_cast<std::uint32_t>( i ) ) ) );
    return op;
  }

  /// Table with entry i = bit i of `table` (windows up to 6 points).
  static SetOperator from_bits( Window window, std::uint64_t table )
  {
    SetOperator op( std::move( window ) );
    if ( op.table_size() < 64 && ( table >> op.table_size() ) != 0 )
      throw dimension_error( "table bits beyond 2^|W| entries" );
    op.words_[0] = table;
    return op;
  }

  const Window& window() const noexcept { return window_; }
  std::size_t arity() const noexcept { return window_.size(); }
  std::uint64_t table_size() const noexcept { return std::uint64_t( 1 ) << window_.size(); }

  bool operator()( std::uint32_t index ) const { return ( words_[index >> 6] >> ( index & 63 ) ) & 1u; }

  void set( std::uint32_t index, bool value )
  {
    auto& w = words_[index >> 6];
    auto const bit = std::uint64_t( 1 ) << ( index & 63 );
    w = value ? ( w | bit ) : ( w & ~bit );
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  /// Number of patterns mapped to 1.
  std::uint64_t count_ones() const
  {
    std::uint64_t c = 0;
    for ( auto w : words_ )
      c += static_cast<std::uint64_t>( std::popcount( w ) );
    return c;
  }

  friend bool operator==( const SetOperator&, const SetOperator& ) = default;

private:
  Window window_;
  std::vector<std::uint64_t> words_;
};

inline bool eval_set( const SetOperator& op, const BinaryPattern& p )
{
  if ( p.size() != op.arity() )
    throw dimension_error( "pattern of size " + std::to_string( p.size() ) + " on a window of size " +
                           std::to_string( op.arity() ) );
  return op( p.bits() );
}

/// Point-wise order of characteristic functions.
inline bool leq( const SetOperator& a, const SetOperator& b )
{
  if ( a.window() != b.window() )
    throw dimension_error( "operators over different windows" );
  for ( std::size_t i = 0; i < a.words().size(); ++i )
    if ( a.words()[i] & ~b.words()[i] )
      return false;
  return true;
}

/// X -> 1 - phi(X).
inline SetOperator negated( const SetOperator& op )
{
  return SetOperator::from_function( op.window(), [&]( std::uint32_t i ) { return !op( i ); } );
}

/// X -> phi(complement X).
inline SetOperator input_complemented( const SetOperator& op )
{
  auto const mask = op.window().full_mask();
  return SetOperator::from_function( op.window(), [&]( std::uint32_t i ) { return op( ~i & mask ); } );
}

/// Dual operator X -> 1 - phi(complement X): the same operator read in the reversed order.
inline SetOperator dual( const SetOperator& op )
{
  auto const mask = op.window().full_mask();
  return SetOperator::from_function( op.window(), [&]( std::uint32_t i ) { return !op( ~i & mask ); } );
}

} // namespace stackmorph
