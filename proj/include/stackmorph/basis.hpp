#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "enumerate.hpp"
#include "interval.hpp"
#include "kernel.hpp"

namespace stackmorph
{

/// Largest window for which set-side bases are extracted.
inline constexpr std::size_t max_basis_window = 12;

/// Antichain of maximal intervals of a set kernel.
template<Pattern P>
struct IntervalBasis
{
  Window window;
  std::vector<PatternInterval<P>> intervals;

  friend bool operator==( const IntervalBasis&, const IntervalBasis& ) = default;
};

using SetBasis = IntervalBasis<BinaryPattern>;

/// Maximal grey intervals of one level t of a stack kernel.
struct GreyBasis
{
  Window window;
  int max_level = 255;
  int level = 1;
  std::vector<GreyInterval> intervals;

  friend bool operator==( const GreyBasis&, const GreyBasis& ) = default;
};

/// Interval domination: every interval of `a` lies inside some interval of `b`.
template<Pattern P>
bool basis_leq( const std::vector<PatternInterval<P>>& a, const std::vector<PatternInterval<P>>& b )
{
  return std::all_of( a.begin(), a.end(), [&]( auto const& iv ) {
    return std::any_of( b.begin(), b.end(), [&]( auto const& jv ) { return interval_subset( iv, jv ); } );
  } );
}

inline bool basis_leq( const SetBasis& a, const SetBasis& b ) { return basis_leq( a.intervals, b.intervals ); }
inline bool basis_leq( const GreyBasis& a, const GreyBasis& b ) { return basis_leq( a.intervals, b.intervals ); }

namespace detail
{

/// Memoized "interval inside kernel" test over the 3^n cube of intervals.
class KernelCubeOracle
{
public:
  explicit KernelCubeOracle( const SetKernel& k ) : kernel_( k ), n_( k.window().size() )
  {
    pow3_.resize( n_ + 1, 1 );
    for ( std::size_t i = 1; i <= n_; ++i )
      pow3_[i] = pow3_[i - 1] * 3;
    memo_.assign( pow3_[n_], -1 );
  }

  /// Trit 0/1 for fixed positions, 2 for free ones.
  std::uint32_t code( std::uint32_t lower, std::uint32_t free ) const
  {
    std::uint32_t c = 0;
    for ( std::size_t i = 0; i < n_; ++i )
      c += pow3_[i] * ( ( free >> i & 1u ) ? 2u : ( lower >> i & 1u ) );
    return c;
  }

  bool inside( std::uint32_t lower, std::uint32_t free )
  {
    auto& m = memo_[code( lower, free )];
    if ( m >= 0 )
      return m != 0;
    bool r;
    if ( free == 0 )
      r = kernel_.contains( lower );
    else
    {
      std::uint32_t const w = free & ( ~free + 1u );
      r = inside( lower, free & ~w ) && inside( lower | w, free & ~w );
    }
    // memo_ may not be resized during recursion, so the reference stays valid
    m = r ? 1 : 0;
    return r;
  }

private:
  const SetKernel& kernel_;
  std::size_t n_;
  std::vector<std::uint32_t> pow3_;
  std::vector<std::int8_t> memo_;
};

} // namespace detail

/*! \brief Maximal intervals contained in a set kernel.

  Starts from the singletons [X,X] of the kernel and expands by lowering one
  lower-bound bit or raising one upper-bound bit while the interval stays in
  the kernel. Intervals with no admissible expansion are exactly the maximal
  ones, since any strictly larger contained interval is reachable in one step.
*/
inline SetBasis basis_of( const SetKernel& kernel )
{
  auto const& w = kernel.window();
  auto const n = w.size();
  if ( n > max_basis_window )
    throw capacity_error( "basis extraction needs |W| <= " + std::to_string( max_basis_window ) + ", got " +
                              std::to_string( n ),
                          std::pow( 3.0, static_cast<double>( n ) ) );

  detail::KernelCubeOracle cube( kernel );
  std::vector<std::uint8_t> visited( static_cast<std::size_t>( std::pow( 3.0, static_cast<double>( n ) ) + 0.5 ), 0 );
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  for ( auto const& x : kernel.members() )
  {
    visited[cube.code( x.bits(), 0 )] = 1;
    queue.emplace_back( x.bits(), 0u );
  }

  std::vector<BinaryInterval> found;
  while ( !queue.empty() )
  {
    auto [lower, free] = queue.front();
    queue.pop_front();
    bool grown = false;
    for ( std::size_t i = 0; i < n; ++i )
    {
      std::uint32_t const bit = 1u << i;
      if ( free & bit )
        continue;
      // lowering a lower-bound bit or raising an upper-bound bit both free position i
      std::uint32_t const nl = lower & ~bit;
      std::uint32_t const nf = free | bit;
      if ( !cube.inside( nl, nf ) )
        continue;
      grown = true;
      auto& v = visited[cube.code( nl, nf )];
      if ( !v )
      {
        v = 1;
        queue.emplace_back( nl, nf );
      }
    }
    if ( !grown )
      found.push_back( { BinaryPattern( n, lower ), BinaryPattern( n, lower | free ) } );
  }
  return { w, maximal_elements( std::move( found ) ) };
}

/// Union of the intervals, as a lookup table.
inline SetOperator operator_from_basis( const SetBasis& basis )
{
  SetOperator op( basis.window );
  for ( auto const& iv : basis.intervals )
  {
    if ( iv.lower.size() != basis.window.size() || iv.upper.size() != basis.window.size() )
      throw dimension_error( "basis interval does not match the basis window" );
    if ( iv.empty() )
      continue;
    std::uint32_t const lo = iv.lower.bits();
    std::uint32_t const free = iv.upper.bits() & ~lo;
    // enumerate the subsets of `free`
    std::uint32_t sub = 0;
    do
    {
      op.set( lo | sub, true );
      sub = ( sub - free ) & free;
    } while ( sub != 0 );
  }
  return op;
}

inline SetKernel kernel_from_basis( const SetBasis& basis ) { return kernel_of( operator_from_basis( basis ) ); }

/*! \brief The grey interval [tX, tY + (m-t)W] attached to a set interval [X,Y].

  This is the smallest grey interval containing level t of the stack kernel
  generated by [X,Y]. It equals that level exactly when X is empty or Y is
  the whole window; otherwise the level is a union of m-t+1 intervals, see
  single_interval_level().
*/
inline GreyInterval single_interval_hull( const BinaryInterval& iv, int max_level, int t )
{
  detail::require_level( t, max_level );
  auto const n = iv.lower.size();
  std::vector<level_t> lo( n ), hi( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    lo[i] = static_cast<level_t>( iv.lower[i] ? t : 0 );
    hi[i] = static_cast<level_t>( ( iv.upper[i] ? t : 0 ) + ( max_level - t ) );
  }
  return { GreyPattern( std::move( lo ), max_level ), GreyPattern( std::move( hi ), max_level ) };
}

/*! \brief Exact maximal grey intervals of level t for a one-interval set kernel [X,Y].

  Level t is {f : min_X f - max_{W\Y} f >= t}, with an empty min read as m
  and an empty max as 0. Splitting on a = max_{W\Y} f gives the intervals
  [(a+t)X, mY + a(W\Y)] for a = 0..m-t, which are pairwise incomparable when
  X is nonempty and Y is not the whole window and collapse to the hull
  otherwise.
*/
inline std::vector<GreyInterval> single_interval_level( const BinaryInterval& iv, int max_level, int t )
{
  detail::require_level( t, max_level );
  if ( iv.empty() )
    return {};
  auto const n = iv.lower.size();
  bool const x_empty = iv.lower.bits() == 0;
  bool const y_full = iv.upper.bits() == iv.upper.mask();
  if ( x_empty || y_full )
    return { single_interval_hull( iv, max_level, t ) };

  std::vector<GreyInterval> out;
  for ( int a = 0; a <= max_level - t; ++a )
  {
    std::vector<level_t> lo( n ), hi( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
      lo[i] = static_cast<level_t>( iv.lower[i] ? a + t : 0 );
      hi[i] = static_cast<level_t>( iv.upper[i] ? max_level : a );
    }
    out.push_back( { GreyPattern( std::move( lo ), max_level ), GreyPattern( std::move( hi ), max_level ) } );
  }
  return maximal_elements( std::move( out ) );
}

/*! \brief Whether f lies in level t of the stack kernel generated by a set basis.

  A single interval uses the closed form min_X f - max_{W\Y} f >= t. Larger
  bases count the levels s whose cross-section falls in some interval.
*/
inline bool stack_basis_member( const SetBasis& basis, int max_level, int t, const GreyPattern& f )
{
  detail::require_level( t, max_level );
  if ( f.size() != basis.window.size() || f.max_level() != max_level )
    throw dimension_error( "grey pattern does not match the basis window or max level" );

  if ( basis.intervals.size() == 1 )
  {
    auto const& iv = basis.intervals.front();
    if ( iv.empty() )
      return false;
    int min_in = max_level;
    int max_out = 0;
    for ( std::size_t i = 0; i < f.size(); ++i )
    {
      if ( iv.lower[i] )
        min_in = std::min<int>( min_in, f[i] );
      if ( !iv.upper[i] )
        max_out = std::max<int>( max_out, f[i] );
    }
    return min_in - max_out >= t;
  }

  int count = 0;
  for ( int s = 1; s <= max_level; ++s )
  {
    auto const section = cross_section( f, s );
    bool const hit = std::any_of( basis.intervals.begin(), basis.intervals.end(),
                                  [&]( auto const& iv ) { return interval_contains( iv, section ); } );
    count += hit ? 1 : 0;
  }
  return count >= t;
}

namespace detail
{

/// Maximal grey intervals of a set of grey patterns given by a rank-indexed indicator.
class GreyBoxSearch
{
public:
  GreyBoxSearch( const std::vector<std::uint8_t>& member, std::size_t n, int m, double cap )
      : member_( member ), n_( n ), m_( m ), cap_( cap )
  {
    radix_.resize( n_ + 1, 1 );
    for ( std::size_t i = 1; i <= n_; ++i )
      radix_[i] = radix_[i - 1] * ( static_cast<std::uint64_t>( m ) + 1 );
  }

  std::vector<GreyInterval> run()
  {
    std::deque<Key> queue;
    for ( std::uint64_t r = 0; r < member_.size(); ++r )
      if ( member_[r] )
      {
        visit( { r, r }, queue );
      }
    std::vector<GreyInterval> found;
    while ( !queue.empty() )
    {
      auto const key = queue.front();
      queue.pop_front();
      bool grown = false;
      for ( std::size_t i = 0; i < n_; ++i )
      {
        if ( digit( key.lo, i ) > 0 )
        {
          Key const k{ key.lo - radix_[i], key.hi };
          if ( inside( k ) )
          {
            grown = true;
            visit( k, queue );
          }
        }
        if ( digit( key.hi, i ) < static_cast<std::uint64_t>( m_ ) )
        {
          Key const k{ key.lo, key.hi + radix_[i] };
          if ( inside( k ) )
          {
            grown = true;
            visit( k, queue );
          }
        }
      }
      if ( !grown )
        found.push_back( { grey_from_rank( key.lo, n_, m_ ), grey_from_rank( key.hi, n_, m_ ) } );
    }
    return maximal_elements( std::move( found ) );
  }

private:
  struct Key
  {
    std::uint64_t lo;
    std::uint64_t hi;
    bool operator==( const Key& ) const = default;
  };
  struct KeyHash
  {
    std::size_t operator()( const Key& k ) const noexcept { return std::hash<std::uint64_t>()( k.lo * 0x9e3779b97f4a7c15ull ^ k.hi ); }
  };

  std::uint64_t digit( std::uint64_t rank, std::size_t i ) const { return rank / radix_[i] % radix_[1]; }

  void visit( Key k, std::deque<Key>& queue )
  {
    if ( seen_.insert( k ).second )
    {
      if ( static_cast<double>( seen_.size() ) > cap_ )
        throw capacity_error( "grey interval search exceeded the enumeration cap", static_cast<double>( seen_.size() ) );
      queue.push_back( k );
    }
  }

  bool inside( Key k )
  {
    if ( k.lo == k.hi )
      return member_[k.lo] != 0;
    if ( auto it = memo_.find( k ); it != memo_.end() )
      return it->second;
    std::size_t i = 0;
    while ( digit( k.lo, i ) == digit( k.hi, i ) )
      ++i;
    // slab at the lower value of coordinate i, plus the rest of the box
    std::uint64_t const dl = digit( k.lo, i );
    std::uint64_t const dh = digit( k.hi, i );
    Key const slab{ k.lo, k.hi - ( dh - dl ) * radix_[i] };
    Key const rest{ k.lo + radix_[i], k.hi };
    bool const r = inside( slab ) && inside( rest );
    memo_.emplace( k, r );
    return r;
  }

  const std::vector<std::uint8_t>& member_;
  std::size_t n_;
  int m_;
  double cap_;
  std::vector<std::uint64_t> radix_;
  std::unordered_set<Key, KeyHash> seen_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

} // namespace detail

/*! \brief Maximal grey intervals of level t of the stack kernel generated by a set basis.

  One-interval bases use the closed form of single_interval_level() with no
  enumeration. Other bases enumerate the (m+1)^|W| grey patterns, capped by
  `cap`, and search the maximal boxes of the level set.
*/
inline GreyBasis stack_basis_level( const SetBasis& basis, int max_level, int t,
                                    double cap = default_enumeration_cap )
{
  detail::require_level( t, max_level );
  GreyBasis out{ basis.window, max_level, t, {} };
  if ( basis.intervals.empty() )
    return out;
  if ( basis.intervals.size() == 1 )
  {
    out.intervals = single_interval_level( basis.intervals.front(), max_level, t );
    return out;
  }

  auto const n = basis.window.size();
  require_enumerable( static_cast<std::uint64_t>( max_level ) + 1, n, cap, "grey patterns" );
  std::vector<std::uint8_t> member;
  for ( auto const& f : enumerate_grey( n, max_level, cap ) )
    member.push_back( stack_basis_member( basis, max_level, t, f ) ? 1 : 0 );
  out.intervals = detail::GreyBoxSearch( member, n, max_level, cap ).run();
  return out;
}

} // namespace stackmorph
