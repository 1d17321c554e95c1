#include <lore/types.hpp>

#include <string>

namespace lore {

void validate_triplet_set(const TripletSet& ts, int n) {
    for (std::size_t pos = 0; pos < ts.triplets.size(); ++pos) {
        const Triplet& t = ts.triplets[pos];
        for (int idx : {t.anchor, t.near, t.far}) {
            if (idx < 0 || idx >= n) {
                throw IndexOutOfRange(
                    pos, "triplet " + std::to_string(pos) + " references item " +
                             std::to_string(idx) + " outside [0, " +
                             std::to_string(n) + ")");
            }
        }
        if (t.anchor == t.near || t.anchor == t.far || t.near == t.far) {
            throw DegenerateTriplet(
                pos, "triplet " + std::to_string(pos) + " has repeated indices (" +
                         std::to_string(t.anchor) + "," + std::to_string(t.near) +
                         "," + std::to_string(t.far) + ")");
        }
    }
}

}  // namespace lore
