#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>

#include "aniso/types.hpp"

namespace aniso {

/// Grading of a time grid.
struct Grading {
    enum class Kind { uniform, geometric };
    Kind kind = Kind::uniform;
    double ratio = 0.7;        // geometric cell-width ratio toward t=0, in (0,1)
    int n_boundary_layers = 12;

    static Grading uniform() { return {Kind::uniform, 0.0, 0}; }
    static Grading geometric(double ratio, int layers) {
        return {Kind::geometric, ratio, layers};
    }
};

/// Composite-midpoint grid on (0,T). Nodes are cell midpoints, weights are
/// cell widths; geometric grading packs `n_boundary_layers` cells into
/// (0, T/100) with widths shrinking by `ratio` toward 0.
struct Grid1D {
    TimeDomain domain{TimeDomain::finite(1.0)};
    Eigen::VectorXd nodes;
    Eigen::VectorXd quad_weights;
    Eigen::VectorXd edges;  // n+1 cell boundaries, edges[0]=0, edges[n]=T
    Grading grading;

    int size() const { return static_cast<int>(nodes.size()); }
    double T() const { return domain.T; }
};

Grid1D make_graded_grid(const TimeDomain& domain, int n, const Grading& grading);

/// Default grid for this artifact: geometric toward 0, ratio 0.7, 12 layers.
inline Grid1D default_grid(const TimeDomain& domain, int n) {
    return make_graded_grid(domain, n, Grading::geometric(0.7, 12));
}

/// R^d-valued samples on a Grid1D. `value_p` and `value_scale` configure the
/// pointwise modulus |v| = value_scale * (sum_j |v_j|^value_p)^{1/value_p},
/// which stands in for the norm of E when the components are themselves
/// quadrature samples (e.g. E = L_p over a spatial grid). Defaults to the
/// Euclidean norm.
struct SampledFunction {
    Grid1D grid;
    Eigen::MatrixXd values;  // grid.size() x d
    double value_p = 2.0;
    double value_scale = 1.0;

    int d() const { return static_cast<int>(values.cols()); }

    double value_norm(int i) const {
        if (value_p == 2.0 && value_scale == 1.0) return values.row(i).norm();
        double s = 0.0;
        for (int j = 0; j < values.cols(); ++j)
            s += std::pow(std::abs(values(i, j)), value_p);
        return value_scale * std::pow(s, 1.0 / value_p);
    }
    double diff_norm(int i, int k) const {
        if (value_p == 2.0 && value_scale == 1.0)
            return (values.row(i) - values.row(k)).norm();
        double s = 0.0;
        for (int j = 0; j < values.cols(); ++j)
            s += std::pow(std::abs(values(i, j) - values(k, j)), value_p);
        return value_scale * std::pow(s, 1.0 / value_p);
    }
};

SampledFunction sample(const std::function<Eigen::VectorXd(double)>& f,
                       const Grid1D& grid, int d);
SampledFunction sample_scalar(const std::function<double(double)>& f,
                              const Grid1D& grid);

/// Cubic-spline resampling of u onto another grid over the same interval.
SampledFunction resample(const SampledFunction& u, const Grid1D& grid);

/// Uniform periodic spatial grid on a torus of circumference 2*pi*L per axis.
/// dims is 1 or 2; sizes are powers of two.
struct SpatialGrid {
    int dims = 1;
    int n1 = 0, n2 = 1;  // n2 == 1 when dims == 1
    double L = 1.0;      // circumference = 2*pi*L

    double circumference() const { return 2.0 * M_PI * L; }
    double h() const { return circumference() / n1; }
    int total() const { return n1 * n2; }
    double x1(int i) const { return i * circumference() / n1; }
    double x2(int j) const { return j * circumference() / n2; }
    /// Integer frequency -> angular frequency xi = k / L.
    double xi1(int i) const {
        int k = (i <= n1 / 2) ? i : i - n1;
        return k / L;
    }
    double xi2(int j) const {
        int k = (j <= n2 / 2) ? j : j - n2;
        return k / L;
    }
};

/// Values on a tensor time x space grid; column index is flattened space
/// (i + n1*j).
struct SpaceTimeField {
    Grid1D tgrid;
    SpatialGrid xgrid;
    Eigen::MatrixXd values;  // tgrid.size() x xgrid.total()
};

bool is_power_of_two(int n);

// CSV interchange: "t,v1..vd" for sampled functions, "t,x,v" for 1-D fields.
void write_csv(std::ostream& os, const SampledFunction& u);
SampledFunction read_csv(std::istream& is);
void write_field_csv(std::ostream& os, const SpaceTimeField& u);

}  // namespace aniso
