#include "aniso/grid.hpp"

#include "aniso/spline.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace aniso {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid1D make_graded_grid(const TimeDomain& domain, int n, const Grading& grading) {
    if (n < 8) throw std::invalid_argument("make_graded_grid: n >= 8 required");
    const double T = domain.T;
    Eigen::VectorXd edges(n + 1);

    if (grading.kind == Grading::Kind::uniform) {
        for (int i = 0; i <= n; ++i) edges[i] = T * double(i) / n;
    } else {
        const double r = grading.ratio;
        const int nb = grading.n_boundary_layers;
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("make_graded_grid: geometric ratio must be in (0,1)");
        if (nb < 1 || nb >= n - 1)
            throw std::invalid_argument("make_graded_grid: boundary layers must be in [1, n-2]");
        // nb geometrically shrinking cells fill (0, T/100), the remaining
        // n-nb cells are uniform on (T/100, T).
        const double delta = T / 100.0;
        // widths w * r^{nb-1}, ..., w * r, w (largest adjacent to delta)
        double gsum = (1.0 - std::pow(r, nb)) / (1.0 - r);
        double w_top = delta / gsum;
        edges[0] = 0.0;
        double acc = 0.0;
        for (int i = 0; i < nb; ++i) {
            acc += w_top * std::pow(r, nb - 1 - i);
            edges[i + 1] = acc;
        }
        edges[nb] = delta;  // kill accumulation roundoff
        const int nu = n - nb;
        for (int i = 1; i <= nu; ++i)
            edges[nb + i] = delta + (T - delta) * double(i) / nu;
    }
    edges[n] = T;

    Grid1D g;
    g.domain = domain;
    g.grading = grading;
    g.edges = edges;
    g.nodes.resize(n);
    g.quad_weights.resize(n);
    for (int i = 0; i < n; ++i) {
        g.nodes[i] = 0.5 * (edges[i] + edges[i + 1]);
        g.quad_weights[i] = edges[i + 1] - edges[i];
        if (!(g.quad_weights[i] > 0.0))
            throw std::runtime_error("make_graded_grid: degenerate cell");
    }
    return g;
}

SampledFunction sample(const std::function<Eigen::VectorXd(double)>& f,
                       const Grid1D& grid, int d) {
    SampledFunction u;
    u.grid = grid;
    u.values.resize(grid.size(), d);
    for (int i = 0; i < grid.size(); ++i) {
        Eigen::VectorXd v = f(grid.nodes[i]);
        if (v.size() != d)
            throw std::invalid_argument("sample: dimension mismatch");
        if (!v.allFinite())
            throw std::domain_error("sample: non-finite value at t=" +
                                    std::to_string(grid.nodes[i]));
        u.values.row(i) = v.transpose();
    }
    return u;
}

SampledFunction sample_scalar(const std::function<double(double)>& f,
                              const Grid1D& grid) {
    return sample([&](double t) { return Eigen::VectorXd::Constant(1, f(t)); },
                  grid, 1);
}

SampledFunction resample(const SampledFunction& u, const Grid1D& grid) {
    SampledFunction v;
    v.grid = grid;
    v.value_p = u.value_p;
    v.value_scale = u.value_scale;
    v.values.resize(grid.size(), u.d());
    for (int j = 0; j < u.d(); ++j) {
        CubicSpline s(u.grid.nodes, u.values.col(j));
        for (int i = 0; i < grid.size(); ++i) v.values(i, j) = s(grid.nodes[i]);
    }
    return v;
}

static void write_number(std::ostream& os, double x) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.15g", x);
    os << buf;
}

void write_csv(std::ostream& os, const SampledFunction& u) {
    os << "t";
    for (int j = 0; j < u.d(); ++j) os << ",v" << (j + 1);
    os << "\n";
    for (int i = 0; i < u.grid.size(); ++i) {
        write_number(os, u.grid.nodes[i]);
        for (int j = 0; j < u.d(); ++j) {
            os << ",";
            write_number(os, u.values(i, j));
        }
        os << "\n";
    }
}

SampledFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("read_csv: empty input");
    if (line.rfind("t,", 0) != 0)
        throw std::runtime_error("read_csv: expected header starting with 't,'");
    int d = 0;
    for (char c : line)
        if (c == ',') ++d;

    std::vector<double> ts;
    std::vector<double> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            double x = std::stod(cell);
            if (col == 0)
                ts.push_back(x);
            else
                vals.push_back(x);
            ++col;
        }
        if (col != d + 1)
            throw std::runtime_error("read_csv: inconsistent column count");
    }
    const int n = static_cast<int>(ts.size());
    if (n < 8) throw std::runtime_error("read_csv: too few rows (need >= 8)");
    for (int i = 1; i < n; ++i)
        if (!(ts[i] > ts[i - 1]))
            throw std::runtime_error("read_csv: times must be strictly increasing");
    if (!(ts[0] > 0.0)) throw std::runtime_error("read_csv: times must be positive");

    // Reconstruct a midpoint grid consistent with the node positions: the
    // nodes are taken as midpoints of cells whose edges are inferred
    // recursively from 0.
    Grid1D g;
    g.edges.resize(n + 1);
    g.edges[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = 2.0 * ts[i] - g.edges[i];
        if (!(e > g.edges[i]))
            throw std::runtime_error("read_csv: nodes not consistent with a midpoint grid");
        g.edges[i + 1] = e;
    }
    g.domain = TimeDomain::finite(g.edges[n]);
    g.nodes = Eigen::Map<Eigen::VectorXd>(ts.data(), n);
    g.quad_weights.resize(n);
    for (int i = 0; i < n; ++i) g.quad_weights[i] = g.edges[i + 1] - g.edges[i];

    SampledFunction u;
    u.grid = g;
    u.values.resize(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) u.values(i, j) = vals[size_t(i) * d + j];
    return u;
}

void write_field_csv(std::ostream& os, const SpaceTimeField& u) {
    if (u.xgrid.dims != 1)
        throw std::invalid_argument("write_field_csv: only 1-D spatial grids");
    os << "t,x,v\n";
    for (int i = 0; i < u.tgrid.size(); ++i)
        for (int j = 0; j < u.xgrid.n1; ++j) {
            write_number(os, u.tgrid.nodes[i]);
            os << ",";
            write_number(os, u.xgrid.x1(j));
            os << ",";
            write_number(os, u.values(i, j));
            os << "\n";
        }
}

}  // namespace aniso
