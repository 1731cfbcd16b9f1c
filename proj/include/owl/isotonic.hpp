#pragma once

// Projection onto the monotone (non-increasing) cone by pool adjacent
// violators, and onto the monotone non-negative cone by clipping after.

#include "owl/error.hpp"
#include "owl/types.hpp"

#include <vector>

namespace owl {

template <class Scalar>
struct PavBlock {
    Index start = 0;
    Index end = 0; // inclusive
    Scalar mean{0};
    Index weight = 0;
};

/// Reusable PAV state. Not thread-safe; one per thread.
template <class Scalar>
class IsotonicWorkspace {
public:
    /// Replaces `v` with its projection onto {x : x_1 >= ... >= x_n}.
    /// Returns the number of block merges performed (at most n - 1).
    Index project_monotone(Eigen::Ref<Vector<Scalar>> v)
    {
        blocks_.clear();
        blocks_.reserve(static_cast<std::size_t>(v.size()));
        Index merges = 0;
        for (Index i = 0; i < v.size(); ++i) {
            blocks_.push_back({i, i, v[i], 1});
            while (blocks_.size() > 1) {
                PavBlock<Scalar>& prev = blocks_[blocks_.size() - 2];
                const PavBlock<Scalar>& last = blocks_.back();
                if (!(prev.mean < last.mean)) break;
                const Index weight = prev.weight + last.weight;
                prev.mean = (prev.mean * static_cast<Scalar>(prev.weight) + last.mean * static_cast<Scalar>(last.weight)) /
                            static_cast<Scalar>(weight);
                prev.weight = weight;
                prev.end = last.end;
                blocks_.pop_back();
                ++merges;
            }
        }
        for (const auto& b : blocks_) {
            if (b.weight > 1) v.segment(b.start, b.weight).setConstant(b.mean);
        }
        merges_ += merges;
        return merges;
    }

    /// Replaces `v` with its projection onto {x : x_1 >= ... >= x_n >= 0}.
    Index project_monotone_nonneg(Eigen::Ref<Vector<Scalar>> v)
    {
        const Index merges = project_monotone(v);
        v = v.cwiseMax(Scalar(0));
        return merges;
    }

    /// Blocks of the most recent projection.
    const std::vector<PavBlock<Scalar>>& blocks() const { return blocks_; }

    /// Merges accumulated over the lifetime of this workspace.
    Index total_merges() const { return merges_; }

private:
    std::vector<PavBlock<Scalar>> blocks_;
    Index merges_ = 0;
};

template <class Derived>
Vector<typename Derived::Scalar> project_monotone_cone(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    detail::require(v.allFinite(), "project_monotone_cone: non-finite entry");
    Vector<Scalar> out = v;
    IsotonicWorkspace<Scalar> ws;
    ws.project_monotone(out);
    return out;
}

template <class Derived>
Vector<typename Derived::Scalar> project_monotone_nonneg_cone(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    detail::require(v.allFinite(), "project_monotone_nonneg_cone: non-finite entry");
    Vector<Scalar> out = v;
    IsotonicWorkspace<Scalar> ws;
    ws.project_monotone_nonneg(out);
    return out;
}

/// PAV block partition of `v` (block means strictly decreasing).
template <class Derived>
std::vector<PavBlock<typename Derived::Scalar>> pav_blocks(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    Vector<Scalar> out = v;
    IsotonicWorkspace<Scalar> ws;
    ws.project_monotone(out);
    return ws.blocks();
}

} // namespace owl
