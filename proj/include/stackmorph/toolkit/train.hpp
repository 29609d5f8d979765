#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "../engine.hpp"

namespace stackmorph::toolkit
{

struct TrainingPair
{
  BinaryImage input;
  BinaryImage target;
};

/*! \brief Majority-vote table estimate.

  Every output position contributes its input patch and the target pixel
  there. A table bit is 1 when strictly more than half of the observations
  of that patch had target 1; unseen patches stay 0.
*/
inline SetOperator train_majority( const std::vector<TrainingPair>& pairs, const Window& w,
                                   BorderPolicy border = BorderPolicy::zero_pad )
{
  SetOperator op( w );
  std::unordered_map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> votes; // (ones, total)
  for ( std::size_t k = 0; k < pairs.size(); ++k )
  {
    auto const& [in, target] = pairs[k];
    if ( !in.same_shape( target ) )
      throw data_error( "training pair " + std::to_string( k ) + ": input and target differ in size" );
    if ( in.empty() )
      continue;
    auto const frame = output_frame( w, in.width(), in.height(), border );
    for ( int oy = 0; oy < frame.height; ++oy )
      for ( int ox = 0; ox < frame.width; ++ox )
      {
        int const x = ox + frame.x0, y = oy + frame.y0;
        auto& v = votes[extract_pattern( in, w, x, y, border ).bits()];
        v.first += target( x, y ) ? 1 : 0;
        ++v.second;
      }
  }
  for ( auto const& [idx, v] : votes )
    op.set( idx, 2 * v.first > v.second );
  return op;
}

} // namespace stackmorph::toolkit
