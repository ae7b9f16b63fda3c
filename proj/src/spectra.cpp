#include "localforge/spectra.hpp"

#include "localforge/subsets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace localforge {

namespace {

constexpr double kTol = 1e-9;

// Clamp-check a computed eigenvalue list into [0, 2d].
std::vector<double> rangeCheck(std::vector<double> values, double top) {
    for (double& v : values) {
        if (v < -kTol || v > top + kTol) {
            std::ostringstream os;
            os << "eigenvalue " << v << " outside [0, " << top << "]";
            throw std::runtime_error(os.str());
        }
        v = std::min(std::max(v, 0.0), top);
    }
    std::sort(values.begin(), values.end());
    return values;
}

std::vector<double> symmetricEigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense symmetric eigensolve failed");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Eigen::MatrixXd laplacianMatrix(const Graph& g) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (int x = 0; x < g.n(); ++x) {
        l(x, x) = g.degree(x);
        for (int y : g.neighbors(x)) {
            l(x, y) -= 1.0;
        }
    }
    return l;
}

// Laplacian of a decoded ball, using the ball's own degrees.
Eigen::MatrixXd decodedLaplacian(const DecodedBall& b) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(b.size(), b.size());
    for (int x = 0; x < b.size(); ++x) {
        l(x, x) = static_cast<double>(b.adj[static_cast<std::size_t>(x)].size());
        for (int y : b.adj[static_cast<std::size_t>(x)]) {
            l(x, y) -= 1.0;
        }
    }
    return l;
}

double distanceToSet(double x, const RealSet& s) {
    if (s.interval) {
        return std::max({0.0, s.lo - x, x - s.hi});
    }
    double best = std::abs(x - s.points.front());
    for (double p : s.points) {
        best = std::min(best, std::abs(x - p));
    }
    return best;
}

// sup over a of d(a, b). For an interval source the supremum of the
// piecewise-linear distance function is attained at an endpoint or at a
// midpoint between consecutive target points, so those candidates make the
// computation exact.
double directedHausdorff(const RealSet& a, const RealSet& b) {
    std::vector<double> candidates;
    if (!a.interval) {
        candidates = a.points;
    } else {
        candidates.push_back(a.lo);
        candidates.push_back(a.hi);
        if (!b.interval) {
            for (std::size_t i = 0; i + 1 < b.points.size(); ++i) {
                double mid = (b.points[i] + b.points[i + 1]) / 2.0;
                if (mid > a.lo && mid < a.hi) {
                    candidates.push_back(mid);
                }
            }
        }
    }
    double best = 0.0;
    for (double c : candidates) {
        best = std::max(best, distanceToSet(c, b));
    }
    return best;
}

// Chebyshev magnitude squared: T_N(x)^2, branch-stable on both sides of
// [-1, 1].
double chebSquared(int n, double x) {
    double t;
    if (x >= -1.0 && x <= 1.0) {
        t = std::cos(n * std::acos(x));
    } else {
        t = std::cosh(n * std::acosh(std::abs(x)));
    }
    return t * t;
}

int trimmedDegree(const std::vector<double>& coeffs) {
    int deg = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0.0) {
            deg = static_cast<int>(i);
        }
    }
    return deg;
}

Eigen::MatrixXd polynomialOfMatrix(const std::vector<double>& coeffs, const Eigen::MatrixXd& m) {
    int n = static_cast<int>(m.rows());
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * m;
        acc.diagonal().array() += *it;
    }
    return acc;
}

} // namespace

std::vector<double> laplacianSpectrum(const Graph& g) {
    return rangeCheck(symmetricEigenvalues(laplacianMatrix(g)), 2.0 * g.degreeBound());
}

RealSet RealSet::finite(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("finite set must be nonempty");
    }
    std::sort(values.begin(), values.end());
    RealSet s;
    s.points = std::move(values);
    return s;
}

RealSet RealSet::closedInterval(double lo, double hi) {
    if (!(lo <= hi)) {
        throw std::invalid_argument("interval needs lo <= hi");
    }
    RealSet s;
    s.interval = true;
    s.lo = lo;
    s.hi = hi;
    return s;
}

double hausdorff(const RealSet& a, const RealSet& b) {
    return std::max(directedHausdorff(a, b), directedHausdorff(b, a));
}

double IndicatorPolynomial::evaluate(double t) const {
    double u = t - center;
    double s4 = u * u * u * u;
    double b4 = window * window * window * window;
    double big4 = domainMax * domainMax * domainMax * domainMax;
    double xi = (2.0 * s4 - b4 - big4) / (big4 - b4);
    return (chebSquared(kernelDegree, xi) + floorTerm) / peakGain;
}

std::vector<IndicatorPolynomial> indicatorPolynomials(int m, int d, int gridPoints) {
    if (m < 1 || d < 1) {
        throw std::invalid_argument("kernel family needs m >= 1 and d >= 1");
    }
    if (gridPoints < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    int count = 2 * d * m;
    double top = 2.0 * d;
    double window = 1.0 / m;
    double b4 = window * window * window * window;
    double big4 = top * top * top * top;
    // Kernel argument at the center: the far band maps to [-1, 1], the
    // center lands below -1, and cosh growth there sets the peak-to-far
    // ratio. The degree is the smallest one pushing the far field under
    // 1/(1.2 m); the flat quartic shoulder then keeps the plateau high.
    double xiCenter = -(b4 + big4) / (big4 - b4);
    double alpha = std::acosh(-xiCenter);
    int degree = static_cast<int>(std::ceil(std::acosh(std::sqrt(1.2 * m)) / alpha)) + 1;

    std::vector<IndicatorPolynomial> out;
    for (int i = 1; i <= count; ++i) {
        IndicatorPolynomial p;
        p.index = i;
        p.center = static_cast<double>(i) / count;
        p.window = window;
        p.domainMax = top;
        p.kernelDegree = degree;
        p.floorTerm = 1e-9;
        p.peakGain = chebSquared(degree, xiCenter) + p.floorTerm;
        out.push_back(p);
    }

    // Certification is the contract: every polynomial must pass the three
    // conditions on the uniform grid.
    for (const IndicatorPolynomial& p : out) {
        for (int k = 0; k < gridPoints; ++k) {
            double t = top * k / (gridPoints - 1);
            double v = p.evaluate(t);
            const char* violated = nullptr;
            if (!(v > 0.0 && v <= 1.0 + 1.0 / m)) {
                violated = "global bound 0 < P <= 1 + 1/m";
            } else if (std::abs(t - p.center) >= window && !(v < 1.0 / m)) {
                violated = "far field P < 1/m";
            } else if (std::abs(t - p.center) < window / 2.0 && !(v > 1.0 - 1.0 / m)) {
                violated = "plateau P > 1 - 1/m";
            }
            if (violated) {
                std::ostringstream os;
                os << "indicator polynomial " << p.index << "/" << count << " violates "
                   << violated << " at t = " << t << " (value " << v << ")";
                throw std::runtime_error(os.str());
            }
        }
    }
    return out;
}

RestrictedNormReport restrictedNorm(const Graph& g, const std::vector<Partition>& members,
                                    const std::vector<double>& coeffs, int l) {
    if (members.empty()) {
        throw std::invalid_argument("partition list must be nonempty");
    }
    if (coeffs.empty()) {
        throw std::invalid_argument("polynomial needs at least one coefficient");
    }
    if (l < 1) {
        throw std::invalid_argument("separation parameter must be positive");
    }
    if (trimmedDegree(coeffs) > l) {
        throw std::invalid_argument("polynomial degree exceeds the separation parameter");
    }

    Eigen::MatrixXd lap = laplacianMatrix(g);
    std::vector<double> spectrum =
        rangeCheck(symmetricEigenvalues(lap), 2.0 * g.degreeBound());
    double global = 0.0;
    for (double lambda : spectrum) {
        double value = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            value = value * lambda + *it;
        }
        global = std::max(global, std::abs(value));
    }

    // ||P(L) f|| over f supported on an interior I equals the square root of
    // the top eigenvalue of the I x I block of P(L)^2.
    Eigen::MatrixXd p = polynomialOfMatrix(coeffs, lap);
    Eigen::MatrixXd squared = p.transpose() * p;
    double restricted = 0.0;
    for (const Partition& member : members) {
        if (static_cast<int>(member.classOf.size()) != g.n()) {
            throw std::invalid_argument("partition size must match graph");
        }
        for (const VertexSubset& h : member.classes(g)) {
            Boundaries bd = boundaries(g, h, l);
            std::vector<int> interior;
            for (int v : h.members) {
                if (!bd.kInner.contains(v)) {
                    interior.push_back(v);
                }
            }
            if (interior.empty()) {
                continue;
            }
            int k = static_cast<int>(interior.size());
            Eigen::MatrixXd block(k, k);
            for (int a = 0; a < k; ++a) {
                for (int c = 0; c < k; ++c) {
                    block(a, c) = squared(interior[static_cast<std::size_t>(a)],
                                          interior[static_cast<std::size_t>(c)]);
                }
            }
            std::vector<double> ev = symmetricEigenvalues(block);
            restricted = std::max(restricted, std::sqrt(std::max(0.0, ev.back())));
        }
    }

    RestrictedNormReport report;
    report.global = global;
    report.restricted = restricted;
    if (global - restricted < -kTol) {
        throw std::runtime_error("restricted norm exceeded the global norm");
    }
    report.gap = std::max(0.0, global - restricted);
    return report;
}

SpectrumEstimate distributedSpectrumEstimate(const BallSet& balls, int margin) {
    if (balls.empty()) {
        throw std::invalid_argument("ball set must be nonempty");
    }
    int radius = balls.rbegin()->first;
    if (margin < 1 || radius <= margin) {
        throw std::invalid_argument("need ball radius s > margin t >= 1");
    }

    SpectrumEstimate estimate;
    estimate.radius = radius;
    estimate.margin = margin;
    std::vector<double> pooled;
    double top = 0.0;
    for (const CanonicalBall& cb : balls.at(radius)) {
        ++estimate.ballCount;
        DecodedBall b = decode(cb);

        // Root distances inside the decoded ball.
        std::vector<int> dist(static_cast<std::size_t>(b.size()), -1);
        std::vector<int> queue{0};
        dist[0] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int v : b.adj[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }

        std::vector<int> support;
        for (int v = 0; v < b.size(); ++v) {
            top = std::max(top, 2.0 * static_cast<double>(b.adj[static_cast<std::size_t>(v)].size()));
            if (dist[static_cast<std::size_t>(v)] >= 0 &&
                dist[static_cast<std::size_t>(v)] <= radius - margin) {
                support.push_back(v);
            }
        }
        if (support.empty()) {
            continue;
        }
        Eigen::MatrixXd lap = decodedLaplacian(b);
        int k = static_cast<int>(support.size());
        Eigen::MatrixXd block(k, k);
        for (int a = 0; a < k; ++a) {
            for (int c = 0; c < k; ++c) {
                block(a, c) = lap(support[static_cast<std::size_t>(a)],
                                  support[static_cast<std::size_t>(c)]);
            }
        }
        for (double v : symmetricEigenvalues(block)) {
            pooled.push_back(v);
        }
    }
    pooled = rangeCheck(std::move(pooled), top);
    // Union semantics: collapse values equal at tolerance.
    std::vector<double> distinct;
    for (double v : pooled) {
        if (distinct.empty() || v - distinct.back() > kTol) {
            distinct.push_back(v);
        }
    }
    estimate.values = std::move(distinct);
    return estimate;
}

ParameterEstimate parameterTester(const std::function<double(const Graph&)>& parameter,
                                  const std::vector<Graph>& corpus, const Graph& g,
                                  int radius) {
    if (corpus.empty()) {
        throw std::invalid_argument("corpus must be nonempty");
    }
    if (!parameter) {
        throw std::invalid_argument("parameter evaluator must be callable");
    }
    BallSet signature = ballSet(g, radius);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (ballSet(corpus[i], radius) == signature) {
            ParameterEstimate e;
            e.found = true;
            e.value = parameter(corpus[i]);
            e.corpusIndex = static_cast<int>(i);
            return e;
        }
    }
    return {};
}

} // namespace localforge
