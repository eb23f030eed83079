#pragma once

#include "tpictm/grid.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace tpictm {

// 2D digital topology on the periodic grid. Foreground and background must
// use complementary connectivities (4/8 or 8/4) to avoid the connectivity
// paradox. The simple-point predicates below read only the punctured 3x3
// neighborhood of a pixel; adjacency inside that patch is non-periodic even
// though the patch cells themselves are looked up with periodic wrapping.

struct ConnectivityPair {
    int foreground_conn;
    int background_conn;

    /// Requires {fg, bg} == {4, 8}.
    ConnectivityPair(int fg, int bg);
    static ConnectivityPair four_eight() { return {4, 8}; }
    static ConnectivityPair eight_four() { return {8, 4}; }

    bool operator==(const ConnectivityPair&) const = default;
};

struct PixelCoord {
    int row = 0;
    int col = 0;
    bool operator==(const PixelCoord&) const = default;
};

struct ComponentLabeling {
    int rows = 0;
    int cols = 0;
    std::vector<int> labels;  // 0 = not in set, 1..count = component id
    int count = 0;
};

/// N_conn(x) including x itself, indices wrapped periodically.
/// |N_4| = 5, |N_8| = 9.
std::vector<PixelCoord> neighborhood(PixelCoord x, int conn, int rows, int cols);

/// Membership bits of the 8 pixels around x (periodic lookup), in the fixed
/// ring order NW, N, NE, W, E, SW, S, SE. Bit k is set iff that neighbor is
/// foreground.
std::uint8_t ring_code(const BinaryMask& mask, PixelCoord x);

/// Geodesic neighborhoods driving the topology numbers. `foreground` is the
/// geodesic set of x within the mask under the foreground connectivity,
/// `background` the one within the complement under the background
/// connectivity. Connectivity 4 uses the order-2 geodesic set inside the
/// punctured 8-neighborhood; connectivity 8 uses the punctured
/// 8-neighborhood intersected with the set.
struct GeodesicNeighborhoods {
    std::vector<PixelCoord> foreground;
    std::vector<PixelCoord> background;
};
GeodesicNeighborhoods geodesic_neighborhoods(PixelCoord x, const BinaryMask& mask,
                                             ConnectivityPair pair);

/// (T_fg, T_bg): component counts of the two geodesic sets, each under its
/// own connectivity, within the punctured 3x3 patch. Both lie in [0, 4].
struct TopologyNumbers {
    int fg = 0;
    int bg = 0;
    bool operator==(const TopologyNumbers&) const = default;
};
TopologyNumbers topology_numbers(PixelCoord x, const BinaryMask& mask, ConnectivityPair pair);

/// Simplicity predicate: true iff topology_numbers(x) == (1, 1). Flipping a
/// simple point never changes the global foreground/background component
/// counts. Depends only on the 8 neighbors of x, not on mask(x) itself.
bool is_simple(PixelCoord x, const BinaryMask& mask, ConnectivityPair pair);

/// Precomputed simplicity over all 256 ring configurations, for the solver's
/// correction sweep.
class SimplePointTable {
  public:
    explicit SimplePointTable(ConnectivityPair pair);
    bool simple(std::uint8_t fg_ring) const { return table_[fg_ring]; }

  private:
    std::array<bool, 256> table_{};
};

/// Flood-fill labeling of the set pixels under 4- or 8-connectivity.
/// Component ids are assigned in row-major first-encounter order.
ComponentLabeling label_components(const BinaryMask& mask, int conn, bool periodic);

}  // namespace tpictm
