#include "tpictm/topology.hpp"

#include <stdexcept>
#include <string>

namespace tpictm {

namespace {

// Ring positions around the center, index order NW, N, NE, W, E, SW, S, SE.
constexpr int kRingRow[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kRingCol[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

// Ring positions 4-adjacent to the center.
constexpr std::uint8_t kAxialMask = 0x5A;  // bits 1 (N), 3 (W), 4 (E), 6 (S)

struct PatchTables {
    std::uint8_t adj4[8];     // patch 4-adjacency between ring positions
    std::uint8_t adj8[8];     // patch 8-adjacency between ring positions
    std::uint8_t closed4[8];  // adj4 plus the position itself

    PatchTables() {
        for (int i = 0; i < 8; ++i) {
            adj4[i] = adj8[i] = 0;
            for (int j = 0; j < 8; ++j) {
                if (i == j) continue;
                const int dr = kRingRow[i] - kRingRow[j];
                const int dc = kRingCol[i] - kRingCol[j];
                const int adr = dr < 0 ? -dr : dr;
                const int adc = dc < 0 ? -dc : dc;
                if (adr + adc == 1) adj4[i] |= std::uint8_t(1u << j);
                if (adr <= 1 && adc <= 1) adj8[i] |= std::uint8_t(1u << j);
            }
            closed4[i] = std::uint8_t(adj4[i] | (1u << i));
        }
    }
};

const PatchTables& patch_tables() {
    static const PatchTables tables;
    return tables;
}

// Geodesic set of `code` (ring membership bits) for one connectivity.
// Connectivity 8 keeps the whole punctured neighborhood; connectivity 4
// takes the order-2 set grown from the axial members.
std::uint8_t geodesic_code(std::uint8_t code, int conn) {
    if (conn == 8) return code;
    const PatchTables& t = patch_tables();
    const std::uint8_t axial = std::uint8_t(code & kAxialMask);
    std::uint8_t grown = 0;
    for (int i = 0; i < 8; ++i)
        if (axial & (1u << i)) grown |= t.closed4[i];
    return std::uint8_t(grown & code);
}

// Number of connected components of the ring subset under patch adjacency.
int count_ring_components(std::uint8_t sub, int conn) {
    const PatchTables& t = patch_tables();
    const std::uint8_t* adj = conn == 4 ? t.adj4 : t.adj8;
    int components = 0;
    std::uint8_t unseen = sub;
    while (unseen) {
        ++components;
        std::uint8_t frontier = std::uint8_t(unseen & (~unseen + 1u));  // lowest set bit
        std::uint8_t comp = 0;
        while (frontier) {
            comp |= frontier;
            std::uint8_t next = 0;
            for (int i = 0; i < 8; ++i)
                if (frontier & (1u << i)) next |= adj[i];
            frontier = std::uint8_t(next & sub & ~comp);
        }
        unseen = std::uint8_t(unseen & ~comp);
    }
    return components;
}

TopologyNumbers topology_numbers_from_code(std::uint8_t fg_ring, ConnectivityPair pair) {
    const std::uint8_t bg_ring = std::uint8_t(~fg_ring);
    TopologyNumbers t;
    t.fg = count_ring_components(geodesic_code(fg_ring, pair.foreground_conn),
                                 pair.foreground_conn);
    t.bg = count_ring_components(geodesic_code(bg_ring, pair.background_conn),
                                 pair.background_conn);
    return t;
}

void check_conn(int conn) {
    if (conn != 4 && conn != 8)
        throw std::invalid_argument("connectivity must be 4 or 8, got " + std::to_string(conn));
}

}  // namespace

ConnectivityPair::ConnectivityPair(int fg, int bg) : foreground_conn(fg), background_conn(bg) {
    check_conn(fg);
    check_conn(bg);
    if (fg == bg)
        throw std::invalid_argument("foreground and background connectivities must differ");
}

std::vector<PixelCoord> neighborhood(PixelCoord x, int conn, int rows, int cols) {
    check_conn(conn);
    std::vector<PixelCoord> out;
    out.reserve(conn == 4 ? 5 : 9);
    out.push_back({periodic_wrap(x.row, rows), periodic_wrap(x.col, cols)});
    for (int i = 0; i < 8; ++i) {
        if (conn == 4 && !(kAxialMask & (1u << i))) continue;
        out.push_back({periodic_wrap(x.row + kRingRow[i], rows),
                       periodic_wrap(x.col + kRingCol[i], cols)});
    }
    return out;
}

std::uint8_t ring_code(const BinaryMask& mask, PixelCoord x) {
    std::uint8_t code = 0;
    for (int i = 0; i < 8; ++i) {
        const int r = periodic_wrap(x.row + kRingRow[i], mask.rows);
        const int c = periodic_wrap(x.col + kRingCol[i], mask.cols);
        if (mask.at(r, c)) code |= std::uint8_t(1u << i);
    }
    return code;
}

GeodesicNeighborhoods geodesic_neighborhoods(PixelCoord x, const BinaryMask& mask,
                                             ConnectivityPair pair) {
    const std::uint8_t fg_ring = ring_code(mask, x);
    const std::uint8_t fg_geo = geodesic_code(fg_ring, pair.foreground_conn);
    const std::uint8_t bg_geo =
        geodesic_code(std::uint8_t(~fg_ring), pair.background_conn);

    GeodesicNeighborhoods out;
    for (int i = 0; i < 8; ++i) {
        const PixelCoord p{periodic_wrap(x.row + kRingRow[i], mask.rows),
                           periodic_wrap(x.col + kRingCol[i], mask.cols)};
        if (fg_geo & (1u << i)) out.foreground.push_back(p);
        if (bg_geo & (1u << i)) out.background.push_back(p);
    }
    return out;
}

TopologyNumbers topology_numbers(PixelCoord x, const BinaryMask& mask, ConnectivityPair pair) {
    return topology_numbers_from_code(ring_code(mask, x), pair);
}

bool is_simple(PixelCoord x, const BinaryMask& mask, ConnectivityPair pair) {
    return topology_numbers(x, mask, pair) == TopologyNumbers{1, 1};
}

SimplePointTable::SimplePointTable(ConnectivityPair pair) {
    for (int code = 0; code < 256; ++code)
        table_[code] =
            topology_numbers_from_code(std::uint8_t(code), pair) == TopologyNumbers{1, 1};
}

ComponentLabeling label_components(const BinaryMask& mask, int conn, bool periodic) {
    check_conn(conn);
    ComponentLabeling out;
    out.rows = mask.rows;
    out.cols = mask.cols;
    out.labels.assign(mask.pixel_count(), 0);

    std::vector<std::size_t> stack;
    for (int r0 = 0; r0 < mask.rows; ++r0) {
        for (int c0 = 0; c0 < mask.cols; ++c0) {
            const std::size_t start = static_cast<std::size_t>(r0) * mask.cols + c0;
            if (!mask.bits[start] || out.labels[start] != 0) continue;
            const int label = ++out.count;
            out.labels[start] = label;
            stack.push_back(start);
            while (!stack.empty()) {
                const std::size_t idx = stack.back();
                stack.pop_back();
                const int r = static_cast<int>(idx) / mask.cols;
                const int c = static_cast<int>(idx) % mask.cols;
                for (int i = 0; i < 8; ++i) {
                    if (conn == 4 && !(kAxialMask & (1u << i))) continue;
                    int nr = r + kRingRow[i];
                    int nc = c + kRingCol[i];
                    if (periodic) {
                        nr = periodic_wrap(nr, mask.rows);
                        nc = periodic_wrap(nc, mask.cols);
                    } else if (nr < 0 || nr >= mask.rows || nc < 0 || nc >= mask.cols) {
                        continue;
                    }
                    const std::size_t nidx = static_cast<std::size_t>(nr) * mask.cols + nc;
                    if (mask.bits[nidx] && out.labels[nidx] == 0) {
                        out.labels[nidx] = label;
                        stack.push_back(nidx);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace tpictm
