#pragma once

#include "ecsa/core.hpp"
#include "ecsa/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ecsa::la {

struct Site {
    std::string id;
    double x;
    double y;
};

/// District blocks, candidate evacuation areas and the block-to-area
/// Euclidean distance matrix. Immutable once built.
class AllocationInstance {
public:
    /// Validates the sites (non-empty, unique ids, finite coordinates) and
    /// computes the distance matrix. Throws std::invalid_argument.
    AllocationInstance(std::vector<Site> blocks, std::vector<Site> areas);

    std::size_t n_blocks() const noexcept { return blocks_.size(); }
    std::size_t n_areas() const noexcept { return areas_.size(); }
    const std::vector<Site>& blocks() const noexcept { return blocks_; }
    const std::vector<Site>& areas() const noexcept { return areas_; }

    double distance(std::size_t block, std::size_t area) const { return distance_[block * areas_.size() + area]; }

    /// Length of the flattened one-hot decision vector, n_blocks * n_areas.
    std::size_t encoded_dim() const noexcept { return blocks_.size() * areas_.size(); }

private:
    std::vector<Site> blocks_;
    std::vector<Site> areas_;
    std::vector<double> distance_; // row-major [block][area]
};

/// One area per block. The one-hot view has exactly one 1 per row.
struct Assignment {
    std::vector<std::size_t> area_of; // indexed by block

    /// Row-major n_blocks x n_areas binary matrix.
    std::vector<std::uint8_t> onehot(std::size_t n_areas) const;

    /// Throws std::invalid_argument unless every row has exactly one 1.
    static Assignment from_onehot(std::span<const std::uint8_t> matrix, std::size_t n_blocks, std::size_t n_areas);

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Instance file: {"blocks": [{"id", "x", "y"}...], "areas": [...]}. Ids may be
/// strings or integers. Throws std::runtime_error naming the offending record.
AllocationInstance load_instance(const std::filesystem::path& path);
AllocationInstance parse_instance(std::istream& in);

/// Two CSV files with header `id,x,y`.
AllocationInstance load_instance_csv(const std::filesystem::path& blocks, const std::filesystem::path& areas);

/// Sum over blocks of the distance to the assigned area.
double fitness(const AllocationInstance& instance, const Assignment& assignment);

/// Reshapes to [n_blocks x n_areas] and takes each row's argmax; ties go to
/// the lowest area index.
Assignment decode(std::span<const double> position, const AllocationInstance& instance);

struct Allocation {
    Assignment assignment;
    double fitness;
};

/// Nearest area for every block (lowest index on ties); the exact optimum of
/// the unconstrained assignment model.
Allocation optimal_assignment(const AllocationInstance& instance);

/// Blocks and areas uniform in the unit square, ids B1.. and A1..
AllocationInstance synth_instance(std::size_t n_blocks, std::size_t n_areas, std::uint64_t seed);

/// Continuous search space of the discretized optimizers: the unit cube of
/// dimension encoded_dim().
SearchBox encoded_box(const AllocationInstance& instance);

/// fitness(decode(x)).
Objective objective(const AllocationInstance& instance);

/// `block_id,area_id,distance` rows.
void write_assignment_csv(std::ostream& out, const AllocationInstance& instance, const Assignment& assignment);

} // namespace ecsa::la
