#include "gkcalc/reps.hpp"
#include "gkcalc/pathring.hpp"
#include <algorithm>
#include <map>

namespace gk {

bool Rep::is_honest() const {
    for (int g = 0; g < G->order; g++)
        for (int h = 0; h < G->order; h++)
            if (m[g] * m[h] != m[G->op(g, h)]) return false;
    return true;
}

bool Rep::is_trivial() const {
    for (const auto& x : m)
        if (!x.is_identity()) return false;
    return true;
}

Rep Rep::trivial(const FiniteGroup* G, int n) {
    std::vector<Matrix> ms(G->order, Matrix::identity(n));
    return Rep(G, std::move(ms));
}

Rep Rep::regular(const FiniteGroup* G) {
    std::vector<Matrix> ms;
    ms.reserve(G->order);
    for (int g = 0; g < G->order; g++) {
        Matrix m(G->order, G->order);
        for (int h = 0; h < G->order; h++) m.at(G->op(g, h), h) = Scalar(1);
        ms.push_back(std::move(m));
    }
    return Rep(G, std::move(ms));
}

Rep Rep::dsum(const Rep& o) const {
    std::vector<Matrix> ms;
    for (int g = 0; g < G->order; g++) ms.push_back(m[g].dsum(o.m[g]));
    return Rep(G, std::move(ms));
}

Rep Rep::kron(const Rep& o) const {
    std::vector<Matrix> ms;
    for (int g = 0; g < G->order; g++) ms.push_back(m[g].kron(o.m[g]));
    return Rep(G, std::move(ms));
}

std::vector<Scalar> Rep::character() const {
    std::vector<Scalar> chi;
    for (int rep : G->class_rep) {
        Scalar tr;
        for (int i = 0; i < dim(); i++) tr += m[rep].at(i, i);
        chi.push_back(tr);
    }
    return chi;
}

std::vector<Scalar> image_character(const Rep& rho, const Matrix& p) {
    std::vector<Scalar> chi;
    for (int rep : rho.G->class_rep) {
        Matrix m = rho[rep] * p;
        Scalar tr;
        for (int i = 0; i < m.rows; i++) tr += m.at(i, i);
        chi.push_back(tr);
    }
    return chi;
}

Scalar char_pairing(const FiniteGroup& G, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    Scalar sum;
    for (int g = 0; g < G.order; g++)
        sum += a[G.class_of[g]] * b[G.class_of[G.inv(g)]];
    return sum * Scalar(mpq_class(1, G.order));
}

// ---------------------------------------------------------------------------
// cyclotomic factors of x^n - 1 over Q(i), n <= 12 (hardcoded; Phi_d splits
// into a conjugate pair exactly when 4 | d)

namespace {

Poly int_poly(std::initializer_list<long> coeffs) { // low degree first
    Poly p;
    for (long c : coeffs) p.c.push_back(Scalar(c));
    p.trim();
    return p;
}

std::vector<Poly> cyclotomic_qi(int d) {
    Scalar I = Scalar::i();
    switch (d) {
        case 1: return {int_poly({-1, 1})};
        case 2: return {int_poly({1, 1})};
        case 3: return {int_poly({1, 1, 1})};
        case 4: { // (x-i)(x+i)
            Poly a; a.c = {-I, Scalar(1)};
            Poly b; b.c = {I, Scalar(1)};
            return {a, b};
        }
        case 5: return {int_poly({1, 1, 1, 1, 1})};
        case 6: return {int_poly({1, -1, 1})};
        case 7: return {int_poly({1, 1, 1, 1, 1, 1, 1})};
        case 8: { // (x^2-i)(x^2+i)
            Poly a; a.c = {-I, Scalar(0), Scalar(1)};
            Poly b; b.c = {I, Scalar(0), Scalar(1)};
            return {a, b};
        }
        case 9: return {int_poly({1, 0, 0, 1, 0, 0, 1})};
        case 10: return {int_poly({1, -1, 1, -1, 1})};
        case 11: return {int_poly({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1})};
        case 12: { // (x^2+ix-1)(x^2-ix-1)
            Poly a; a.c = {Scalar(-1), I, Scalar(1)};
            Poly b; b.c = {Scalar(-1), -I, Scalar(1)};
            return {a, b};
        }
        default:
            throw DecomposeFailure("cyclotomic table only covers orders <= 12, got " + std::to_string(d));
    }
}

std::vector<int> divisors(int n) {
    std::vector<int> d;
    for (int k = 1; k <= n; k++)
        if (n % k == 0) d.push_back(k);
    return d;
}

std::vector<Poly> unity_factors_qi(int n) {
    std::vector<Poly> fs;
    for (int d : divisors(n))
        for (auto& f : cyclotomic_qi(d)) fs.push_back(f);
    return fs;
}

Matrix poly_at(const Poly& p, const Matrix& m) {
    Matrix r(m.rows, m.cols);
    Matrix pw = Matrix::identity(m.rows);
    for (size_t k = 0; k < p.c.size(); k++) {
        if (!p.c[k].is_zero()) r = r + pw * p.c[k];
        if (k + 1 < p.c.size()) pw = pw * m;
    }
    return r;
}

// action of rho(g) restricted to the invariant subspace with basis V
Matrix restrict_to(const Rep& rho, int g, const Matrix& V) {
    auto sigma = V.solve(rho[g] * V);
    if (!sigma) throw Error("restrict_to: subspace not invariant");
    return *sigma;
}

struct Piece {
    Matrix basis; // columns, in ambient coordinates
};

// commutant of the restricted action on piece coordinates
std::vector<Matrix> commutant_basis(const Rep& rho, const Matrix& V) {
    int k = V.cols;
    std::vector<Matrix> sigmas;
    for (int g = 0; g < rho.G->order; g++) sigmas.push_back(restrict_to(rho, g, V));
    // unknowns X (k x k), equations X s_g - s_g X = 0
    int vars = k * k;
    Matrix sys(vars * rho.G->order, vars);
    for (int g = 0; g < rho.G->order; g++) {
        const Matrix& s = sigmas[g];
        for (int i = 0; i < k; i++)
            for (int j = 0; j < k; j++) {
                int row = g * vars + i * k + j;
                // (X s)_{ij} = sum_l X_{il} s_{lj} ; (s X)_{ij} = sum_l s_{il} X_{lj}
                for (int l = 0; l < k; l++) {
                    sys.at(row, i * k + l) += s.at(l, j);
                    sys.at(row, l * k + j) -= s.at(i, l);
                }
            }
    }
    Matrix ns = sys.null_space();
    std::vector<Matrix> basis;
    for (int c = 0; c < ns.cols; c++) {
        Matrix X(k, k);
        for (int i = 0; i < k; i++)
            for (int j = 0; j < k; j++) X.at(i, j) = ns.at(i * k + j, c);
        basis.push_back(std::move(X));
    }
    return basis;
}

} // namespace

Matrix invariant_span(const Rep& rho, const Matrix& vectors) {
    Matrix cols(rho.dim(), vectors.cols * rho.G->order);
    int c = 0;
    for (int g = 0; g < rho.G->order; g++) {
        Matrix gv = rho[g] * vectors;
        for (int j = 0; j < gv.cols; j++, c++)
            for (int i = 0; i < gv.rows; i++) cols.at(i, c) = gv.at(i, j);
    }
    return cols.column_space();
}

Matrix equivariant_projector(const Rep& rho, const Matrix& W) {
    int d = rho.dim(), k = W.cols;
    // complete W to a basis of the ambient space
    Matrix ext(d, k + d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < k; j++) ext.at(i, j) = W.at(i, j);
        ext.at(i, k + i) = Scalar(1);
    }
    Matrix B = ext.column_space();
    if (B.cols != d) throw Error("equivariant_projector: degenerate basis");
    Matrix D(d, d);
    for (int i = 0; i < k; i++) D.at(i, i) = Scalar(1);
    auto Binv = B.inverse();
    if (!Binv) throw Error("equivariant_projector: basis not invertible");
    Matrix P0 = B * D * *Binv;
    Matrix acc(d, d);
    for (int g = 0; g < rho.G->order; g++) {
        auto inv = rho[g].inverse();
        if (!inv) throw Error("equivariant_projector: action matrix not invertible");
        acc = acc + rho[g] * P0 * *inv;
    }
    return acc * Scalar(mpq_class(1, rho.G->order));
}

// ---------------------------------------------------------------------------
// decomposition

namespace {

// split one piece along the kernels of the Q(i)-factors of x^ord(g)-1 applied
// to the restricted action of g.  Only valid for central g.
std::vector<Piece> refine_by_central(const Rep& rho, const Piece& piece, int g) {
    Matrix sigma = restrict_to(rho, g, piece.basis);
    int n = rho.G->element_order(g);
    std::vector<Piece> out;
    int total = 0;
    for (const Poly& f : unity_factors_qi(n)) {
        Matrix K = poly_at(f, sigma).null_space();
        if (K.cols == 0) continue;
        out.push_back({piece.basis * K});
        total += K.cols;
    }
    if (total != piece.basis.cols)
        throw DecomposeFailure("refine_by_central: kernels do not exhaust the space");
    return out;
}

std::vector<int> center_elements(const FiniteGroup& G) {
    std::vector<int> z;
    for (int g = 0; g < G.order; g++) {
        bool central = true;
        for (int h = 0; h < G.order && central; h++)
            if (G.op(g, h) != G.op(h, g)) central = false;
        if (central) z.push_back(g);
    }
    return z;
}

// cyclic Q(i)[G]-span of a single vector (in ambient coordinates)
Matrix cyclic_span(const Rep& rho, const Matrix& v) { return invariant_span(rho, v); }

// splits an isotypic piece (every group element acts with a single
// irreducible minimal polynomial) into copies via cyclic spans
void split_isotypic_abelian(const Rep& rho, Piece piece, std::vector<Piece>& out) {
    while (piece.basis.cols > 0) {
        Matrix v(rho.dim(), 1);
        for (int i = 0; i < rho.dim(); i++) v.at(i, 0) = piece.basis.at(i, 0);
        Matrix W = cyclic_span(rho, v);
        out.push_back({W});
        if (W.cols == piece.basis.cols) break;
        // invariant complement of W inside the piece
        Matrix proj = equivariant_projector(rho, W);
        // complement = kernel of proj intersected with piece = image of (1-proj) on piece
        Matrix rest = (Matrix::identity(rho.dim()) - proj) * piece.basis;
        piece.basis = rest.column_space();
    }
}

// Faddeev-LeVerrier characteristic polynomial (low degree first)
Poly char_poly(const Matrix& M) {
    int n = M.rows;
    std::vector<Scalar> coeff(n + 1);
    coeff[n] = Scalar(1);
    Matrix Maux = Matrix::zero(n, n);
    Matrix Id = Matrix::identity(n);
    for (int k = 1; k <= n; k++) {
        Maux = M * Maux + Id * coeff[n - k + 1];
        Matrix prod = M * Maux;
        Scalar tr;
        for (int i = 0; i < n; i++) tr += prod.at(i, i);
        coeff[n - k] = tr * Scalar(mpq_class(-1, k));
    }
    Poly p;
    p.c = coeff;
    p.trim();
    return p;
}

// Gaussian-integer divisor enumeration (bounded, desk scale)
std::vector<Scalar> gaussian_divisors(const Scalar& z, long norm_cap = 2000000) {
    std::vector<Scalar> out;
    mpq_class N = z.norm();
    if (N == 0 || N.get_den() != 1) return out;
    if (N.get_num() > norm_cap) return out;
    long n = (long)N.get_num().get_si();
    for (long x = -n; x * x <= n; x++)
        for (long y = 0; x * x + y * y <= n; y++) {
            if (x == 0 && y == 0) continue;
            if (n % (x * x + y * y) != 0) continue;
            Scalar w{mpq_class(x), mpq_class(y)};
            Scalar q = z / w;
            if (q.re.get_den() == 1 && q.im.get_den() == 1) {
                out.push_back(w);
                if (y != 0) out.push_back(w.conj());
            }
        }
    return out;
}

// roots of p lying in Q(i); p need not be monic
std::vector<Scalar> gaussian_rational_roots(const Poly& p) {
    std::vector<Scalar> roots;
    if (p.deg() < 1) return roots;
    // clear denominators
    mpz_class lcm = 1;
    for (const Scalar& s : p.c) {
        lcm = lcm * s.re.get_den() / gcd(lcm, s.re.get_den());
        lcm = lcm * s.im.get_den() / gcd(lcm, s.im.get_den());
    }
    Poly q = p;
    for (auto& s : q.c) s = s * Scalar(mpq_class(lcm));
    // strip zero roots
    size_t low = 0;
    while (low < q.c.size() && q.c[low].is_zero()) low++;
    if (low > 0) {
        roots.push_back(Scalar(0));
        q.c.erase(q.c.begin(), q.c.begin() + low);
    }
    if (q.deg() < 1) return roots;
    auto num_divs = gaussian_divisors(q.c.front());
    auto den_divs = gaussian_divisors(q.c.back());
    for (const Scalar& a : num_divs)
        for (const Scalar& b : den_divs) {
            Scalar cand = a / b;
            if (q.eval(cand).is_zero()) {
                bool seen = false;
                for (auto& r : roots)
                    if (r == cand) { seen = true; break; }
                if (!seen) roots.push_back(cand);
            }
        }
    return roots;
}

// nonabelian best-effort splitter
void split_general(const Rep& rho, Piece piece, std::vector<Piece>& out, int depth = 0) {
    if (piece.basis.cols == 0) return;
    if (depth > 64) throw DecomposeFailure("split_general: recursion depth exceeded");
    auto comm = commutant_basis(rho, piece.basis);
    if (comm.size() <= 1) { // scalars only: absolutely irreducible
        out.push_back(std::move(piece));
        return;
    }
    auto split_at = [&](const Matrix& sub_in_piece) {
        Matrix W = piece.basis * sub_in_piece;
        Matrix proj = equivariant_projector(rho, W);
        Matrix rest = ((Matrix::identity(rho.dim()) - proj) * piece.basis).column_space();
        split_general(rho, {W}, out, depth + 1);
        split_general(rho, {rest}, out, depth + 1);
    };
    // singular commutant element gives an invariant splitting directly
    for (const auto& X : comm) {
        int r = X.rank();
        if (r > 0 && r < X.rows) {
            split_at(X.column_space());
            return;
        }
    }
    // eigenvalue hunt on quotients of commutant elements
    for (size_t i = 0; i < comm.size(); i++) {
        auto inv = comm[i].inverse();
        if (!inv) continue;
        for (size_t j = 0; j < comm.size(); j++) {
            if (i == j) continue;
            Matrix M = *inv * comm[j];
            for (const Scalar& lam : gaussian_rational_roots(char_poly(M))) {
                Matrix Z = M - Matrix::identity(M.rows) * lam;
                int r = Z.rank();
                if (r > 0 && r < Z.rows) {
                    split_at(Z.column_space());
                    return;
                }
            }
        }
    }
    // kernels of cyclotomic factors of single elements, made invariant
    for (int g = 0; g < rho.G->order; g++) {
        if (g == rho.G->identity) continue;
        Matrix sigma = restrict_to(rho, g, piece.basis);
        for (const Poly& f : unity_factors_qi(rho.G->element_order(g))) {
            Matrix K = poly_at(f, sigma).null_space();
            if (K.cols == 0 || K.cols == piece.basis.cols) continue;
            Matrix W = invariant_span(rho, piece.basis * K);
            auto sub = piece.basis.solve(W);
            if (!sub) continue;
            if (W.cols > 0 && W.cols < piece.basis.cols) {
                split_at(*sub);
                return;
            }
        }
    }
    // commutant is nontrivial but no certified split was found: either the
    // piece is irreducible with a division-algebra commutant, or we failed.
    // Certify the division case for commutative commutants generated by one
    // group element with table-certified irreducible minimal polynomial.
    for (int g = 0; g < rho.G->order; g++) {
        Matrix sigma = restrict_to(rho, g, piece.basis);
        std::vector<Matrix> pw{Matrix::identity(sigma.rows)};
        for (size_t k = 1; k <= comm.size(); k++) pw.push_back(pw.back() * sigma);
        // does sigma generate the commutant linearly?
        int d2 = sigma.rows * sigma.rows;
        Matrix span(d2, (int)pw.size());
        for (size_t c = 0; c < pw.size(); c++)
            for (int i = 0; i < sigma.rows; i++)
                for (int j = 0; j < sigma.rows; j++)
                    span.at(i * sigma.rows + j, (int)c) = pw[c].at(i, j);
        if (span.rank() != (int)comm.size()) continue;
        // commutant = Q(i)[sigma]; if the minimal polynomial of sigma is a
        // single irreducible table factor, the commutant is a field, and by
        // Maschke a field commutant certifies irreducibility.
        int nonzero = 0;
        int factor_deg = 0;
        bool full = false;
        for (const Poly& f : unity_factors_qi(rho.G->element_order(g))) {
            int k = poly_at(f, sigma).null_space().cols;
            if (k > 0) { nonzero++; full = (k == sigma.rows); factor_deg = f.deg(); }
        }
        if (nonzero == 1 && full && (int)comm.size() == factor_deg) {
            out.push_back(std::move(piece));
            return;
        }
    }
    throw DecomposeFailure("split_general: cannot certify a split of a " +
                           std::to_string(piece.basis.cols) + "-dim piece");
}

} // namespace

std::vector<Irreducible> decompose(const Rep& rho) {
    std::vector<Irreducible> irreps;
    if (rho.dim() == 0) return irreps;
    if (!rho.is_honest()) throw Error("decompose: not a representation");

    std::vector<Piece> pieces{{Matrix::identity(rho.dim())}};
    std::vector<int> central = center_elements(*rho.G);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int g : central) {
            if (g == rho.G->identity) continue;
            std::vector<Piece> next;
            for (auto& p : pieces) {
                auto parts = refine_by_central(rho, p, g);
                if (parts.size() > 1) changed = true;
                for (auto& q : parts) next.push_back(std::move(q));
            }
            pieces = std::move(next);
        }
    }

    std::vector<Piece> fine;
    bool abelian = rho.G->is_abelian();
    for (auto& p : pieces) {
        if (abelian)
            split_isotypic_abelian(rho, std::move(p), fine);
        else
            split_general(rho, std::move(p), fine);
    }

    mpq_class dim_check = 0;
    for (auto& p : fine) {
        Irreducible ir;
        ir.basis = std::move(p.basis);
        std::vector<Scalar> chi;
        for (int rep : rho.G->class_rep) {
            Matrix sigma = restrict_to(rho, rep, ir.basis);
            Scalar tr;
            for (int i = 0; i < sigma.rows; i++) tr += sigma.at(i, i);
            chi.push_back(tr);
        }
        ir.chi = std::move(chi);
        ir.endo_dim = (int)commutant_basis(rho, ir.basis).size();
        dim_check += ir.basis.cols;
        irreps.push_back(std::move(ir));
    }
    if (dim_check != rho.dim())
        throw DecomposeFailure("decompose: pieces do not exhaust the space");
    // orthogonality certification: distinct characters pair to zero, and
    // each pairs with itself to its endomorphism dimension
    for (size_t i = 0; i < irreps.size(); i++)
        for (size_t j = 0; j < irreps.size(); j++) {
            Scalar p = char_pairing(*rho.G, irreps[i].chi, irreps[j].chi);
            if (irreps[i].chi == irreps[j].chi) {
                if (p != Scalar(irreps[i].endo_dim))
                    throw DecomposeFailure("decompose: self-pairing mismatch");
            } else if (!p.is_zero()) {
                // nonzero pairing between distinct characters would mean a
                // piece is secretly reducible
                throw DecomposeFailure("decompose: cross-pairing nonzero");
            }
        }
    return irreps;
}

CharTable char_table(const FiniteGroup& G) {
    Rep reg = Rep::regular(&G);
    auto irreps = decompose(reg);
    CharTable t;
    t.G = &G;
    std::map<std::string, size_t> seen;
    std::vector<Irreducible*> distinct;
    auto key_of = [&](const Irreducible& ir) {
        std::string k;
        for (const auto& s : ir.chi) k += s.str() + ";";
        return k;
    };
    for (auto& ir : irreps) {
        std::string k = key_of(ir);
        if (!seen.count(k)) {
            seen[k] = distinct.size();
            distinct.push_back(&ir);
        }
    }
    // canonical order: trivial character first, then by dimension, then by
    // the serialized character string
    std::sort(distinct.begin(), distinct.end(), [&](Irreducible* a, Irreducible* b) {
        auto trivial = [&](Irreducible* x) {
            for (auto& s : x->chi)
                if (!s.is_one()) return false;
            return true;
        };
        bool ta = trivial(a), tb = trivial(b);
        if (ta != tb) return ta;
        if (a->dim() != b->dim()) return a->dim() < b->dim();
        return key_of(*a) < key_of(*b);
    });
    mpq_class total = 0;
    for (auto* ir : distinct) {
        t.chi.push_back(ir->chi);
        t.dim.push_back(ir->dim());
        t.endo.push_back(ir->endo_dim);
        if (ir->dim() % ir->endo_dim != 0 && ir->dim() * ir->dim() % ir->endo_dim != 0)
            throw DecomposeFailure("char_table: inconsistent endo dimension");
        mpq_class q(ir->dim() * ir->dim(), ir->endo_dim);
        q.canonicalize();
        total += q;
    }
    if (total != G.order)
        throw DecomposeFailure("char_table: dimension accounting fails; decomposition incomplete");
    return t;
}

std::optional<std::vector<long>> CharTable::multiplicities(const std::vector<Scalar>& kappa) const {
    std::vector<long> out;
    std::vector<Scalar> recon(G->num_classes());
    for (int i = 0; i < size(); i++) {
        Scalar p = char_pairing(*G, kappa, chi[i]) * Scalar(mpq_class(1, endo[i]));
        if (p.im != 0 || p.re.get_den() != 1) return std::nullopt;
        if (!p.re.get_num().fits_slong_p()) return std::nullopt;
        long lam = (long)p.re.get_num().get_si();
        out.push_back(lam);
        for (int c = 0; c < G->num_classes(); c++) recon[c] += chi[i][c] * Scalar(lam);
    }
    for (int c = 0; c < G->num_classes(); c++)
        if (recon[c] != kappa[c]) return std::nullopt;
    return out;
}

std::optional<Matrix> equivariant_conjugator(const Rep& rho, const Matrix& p, const Matrix& q, Rng& rng) {
    int d = rho.dim();
    Matrix qperp = Matrix::identity(d) - q;
    Matrix pperp = Matrix::identity(d) - p;
    std::vector<Matrix> inv;
    for (int g = 0; g < rho.G->order; g++) {
        auto ig = rho[g].inverse();
        if (!ig) return std::nullopt;
        inv.push_back(std::move(*ig));
    }
    for (int attempt = 0; attempt < 16; attempt++) {
        // start with 0/1 entries to keep the inverse small; widen on retry
        long lo = attempt < 6 ? 0 : -1;
        Matrix R(d, d), S(d, d);
        for (int i = 0; i < d; i++)
            for (int j = 0; j < d; j++) {
                R.at(i, j) = Scalar(mpq_class(rng.range(lo, 1)),
                                    mpq_class(attempt < 10 ? 0 : rng.range(0, 1)));
                S.at(i, j) = Scalar(mpq_class(rng.range(lo, 1)),
                                    mpq_class(attempt < 10 ? 0 : rng.range(0, 1)));
            }
        Matrix core = q * R * p + qperp * S * pperp;
        Matrix v(d, d);
        for (int g = 0; g < rho.G->order; g++)
            v = v + rho[g] * core * inv[g];
        auto vi = v.inverse();
        if (!vi) continue;
        if (v * p == q * v) return v;
    }
    return std::nullopt;
}

} // namespace gk
