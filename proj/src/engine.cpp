#include "morsecert/engine.hpp"

#include <cmath>

namespace morsecert {

Alphabet::Alphabet(const std::vector<std::vector<Mat>>& generator_factors, const Point& basepoint)
    : basepoint_(basepoint)
{
    if (generator_factors.empty()) throw Error(ErrorKind::InputError, "alphabet needs at least one generator");
    n_ = basepoint.dim();
    SymEig be = sym_eig_desc(basepoint.mat());
    half_ = be.vectors * be.values.cwiseSqrt().asDiagonal() * be.vectors.transpose();
    inverse_half_ = be.vectors * be.values.cwiseSqrt().cwiseInverse().asDiagonal() * be.vectors.transpose();
    for (const auto& gen : generator_factors) {
        if (gen.empty()) throw Error(ErrorKind::InputError, "generator without factors");
        std::vector<Mat> fwd, inv;
        for (const Mat& f : gen) {
            if (f.rows() != n_ || f.cols() != n_) throw Error(ErrorKind::InputError, "generator has wrong size");
            fwd.push_back(inverse_half_ * f * half_);
        }
        for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) inv.push_back(it->inverse());
        factors_.push_back(std::move(fwd));
        factors_.push_back(std::move(inv));
    }
    for (const auto& fs : factors_) {
        compounds_.push_back(Compounds::of_product(fs));
        transposed_.push_back(compounds_.back().transposed());
        std::vector<std::vector<Mat>> per;
        for (const Mat& f : fs) {
            std::vector<Mat> c;
            for (int k = 1; k < n_; ++k) c.push_back(compound(f, k));
            per.push_back(std::move(c));
        }
        factor_compounds_.push_back(std::move(per));
    }
}

Alphabet Alphabet::of(const std::vector<GroupElement>& generators, const Point& basepoint)
{
    std::vector<std::vector<Mat>> f;
    for (const auto& g : generators) f.push_back({g.mat()});
    return Alphabet(f, basepoint);
}

Alphabet Alphabet::powers(const std::vector<GroupElement>& generators, const std::vector<int>& exponents,
                          const Point& basepoint)
{
    if (exponents.size() != generators.size()) throw Error(ErrorKind::InputError, "one exponent per generator");
    std::vector<std::vector<Mat>> f;
    for (size_t i = 0; i < generators.size(); ++i) {
        if (exponents[i] < 1) throw Error(ErrorKind::InputError, "exponents must be positive");
        f.emplace_back(exponents[i], generators[i].mat());
    }
    return Alphabet(f, basepoint);
}

Mat Alphabet::dense(const Word& w) const
{
    Mat m = Mat::Identity(n_, n_);
    for (int l : w)
        for (const Mat& f : factors_.at(l)) m = m * f;
    return m;
}

CompoundWord word_compounds(const Alphabet& alphabet, const Word& w)
{
    CompoundWord cw(alphabet.n());
    for (int l : w) cw.append(alphabet.compounds(l));
    return cw;
}

WordSvd word_svd(const Alphabet& alphabet, const Word& w)
{
    CompoundWord cw = word_compounds(alphabet, w);
    return {cw.svd(), cw.cancellation()};
}

CartanVector word_cartan(const Alphabet& alphabet, const Word& w)
{
    return CartanVector::from_unsorted(2.0 * word_svd(alphabet, w).svd.log_sv);
}

Mat frame_for_face(const std::vector<Mat>& spaces, const FaceType& face)
{
    std::vector<Mat> chosen;
    for (int k : face.dims()) chosen.push_back(spaces.at(k - 1));
    return nested_frame(chosen, face.n());
}

Flag word_shadow(const Alphabet& alphabet, const Word& w, const FaceType& face, const Tolerances& tol)
{
    if (face.n() != alphabet.n()) throw Error(ErrorKind::FaceMismatch, "face dimension differs from alphabet");
    WordSvd ws = word_svd(alphabet, w);
    CartanVector a = CartanVector::from_unsorted(2.0 * ws.svd.log_sv);
    if (a.norm() < tol.linalg) throw Error(ErrorKind::DegenerateSegment, "word fixes the basepoint");
    if (regularity_margin(a, face) <= tol.margin_floor)
        throw Error(ErrorKind::NearSingularMargin, "word " + format_word(w) + " too close to a wall for a shadow");
    return Flag(qr_frame(alphabet.half() * frame_for_face(ws.svd.left_spaces, face)), face);
}

FactorSequence factor_sequence(const Alphabet& alphabet, const Word& w)
{
    FactorSequence fs;
    for (int l : w) {
        const auto& f = alphabet.factors(l);
        const auto& c = alphabet.factor_compounds(l);
        for (size_t i = 0; i < f.size(); ++i) {
            fs.factors.push_back(&f[i]);
            fs.compounds.push_back(&c[i]);
        }
        fs.letter_end.push_back(static_cast<int>(fs.factors.size()));
    }
    return fs;
}

std::vector<std::vector<Vec>> prefix_pullbacks(const Alphabet& alphabet, const Word& w)
{
    const int n = alphabet.n();
    FactorSequence fs = factor_sequence(alphabet, w);
    const int m = static_cast<int>(fs.factors.size());
    CompoundWord cw = word_compounds(alphabet, w);
    std::vector<std::vector<Vec>> out(m + 1, std::vector<Vec>(n - 1));
    for (int k = 1; k < n; ++k) out[m][k - 1] = top_triple(cw.powers()[k - 1]).right;
    for (int j = m - 1; j >= 0; --j)
        for (int k = 1; k < n; ++k) out[j][k - 1] = ((*fs.compounds[j])[k - 1] * out[j + 1][k - 1]).normalized();
    return out;
}

}  // namespace morsecert
