#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pattern.hpp"

namespace stackmorph
{

template<typename P>
concept Pattern = std::same_as<P, BinaryPattern> || std::same_as<P, GreyPattern>;

/*! \brief Closed interval [lower, upper] of patterns.

  An interval with lower not below upper is empty. Empty intervals are kept as
  given and never normalized.
*/
template<Pattern P>
struct PatternInterval
{
  P lower;
  P upper;

  bool empty() const { return !leq( lower, upper ); }

  std::string to_string() const { return "[" + lower.to_string() + "," + upper.to_string() + "]"; }

  friend bool operator==( const PatternInterval&, const PatternInterval& ) = default;
  friend auto operator<=>( const PatternInterval&, const PatternInterval& ) = default;
};

using BinaryInterval = PatternInterval<BinaryPattern>;
using GreyInterval = PatternInterval<GreyPattern>;

template<Pattern P>
bool interval_contains( const PatternInterval<P>& iv, const P& p )
{
  // evaluate both comparisons so mismatched windows always raise
  bool const above = leq( iv.lower, p );
  bool const below = leq( p, iv.upper );
  return above && below;
}

/// Set inclusion a ⊆ b. The empty interval is included in everything.
template<Pattern P>
bool interval_subset( const PatternInterval<P>& a, const PatternInterval<P>& b )
{
  if ( a.empty() )
    return true;
  if ( b.empty() )
    return false;
  return leq( b.lower, a.lower ) && leq( a.upper, b.upper );
}

/// Members not strictly included in another member, sorted by (lower, upper).
template<Pattern P>
std::vector<PatternInterval<P>> maximal_elements( std::vector<PatternInterval<P>> ivs )
{
  std::sort( ivs.begin(), ivs.end() );
  ivs.erase( std::unique( ivs.begin(), ivs.end() ), ivs.end() );

  std::vector<PatternInterval<P>> out;
  for ( std::size_t i = 0; i < ivs.size(); ++i )
  {
    bool dominated = false;
    for ( std::size_t j = 0; j < ivs.size() && !dominated; ++j )
    {
      if ( i == j || !interval_subset( ivs[i], ivs[j] ) )
        continue;
      // equal as sets (only possible for two empty intervals): keep the first
      dominated = !interval_subset( ivs[j], ivs[i] ) || j < i;
    }
    if ( !dominated )
      out.push_back( ivs[i] );
  }
  return out;
}

} // namespace stackmorph
