#!/usr/bin/env python3
"""Generate the hydrogen-chain Hamiltonian/generator fixtures.

Pipeline, all in this file with no external chemistry dependencies:
STO-3G s-Gaussian integrals (closed forms) -> restricted Hartree-Fock ->
MO-basis integrals -> spin-orbital CCSD amplitudes -> Jordan-Wigner mapping
of the second-quantized Hamiltonian and of the anti-Hermitian cluster
excitations -> JSON fixtures under src/cliffordt/fixtures/.

Run from the repository root:  python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import itertools
import json
import math
import sys
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
OUT_DIR = HERE.parent / "src" / "cliffordt" / "fixtures"

# STO-3G hydrogen 1s: exponents and contraction coefficients
STO3G_EXP = np.array([3.42525091, 0.62391373, 0.16885540])
STO3G_COEF = np.array([0.15432897, 0.53532814, 0.44463454])

ANGSTROM_TO_BOHR = 1.0 / 0.529177210903

SYSTEMS = {
    "h2": {
        "geometry": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.735))],
        "description": "H2 at 0.735 angstrom",
        "amplitude_cutoff": 1e-8,
    },
    "h4": {
        "geometry": [("H", (0.0, 0.0, 1.0 * i)) for i in range(4)],
        "description": "linear H4 chain, 1.0 angstrom spacing",
        "amplitude_cutoff": 5e-2,
    },
    "h6": {
        "geometry": [("H", (0.0, 0.0, 1.0 * i)) for i in range(6)],
        "description": "linear H6 chain, 1.0 angstrom spacing",
        "amplitude_cutoff": 4e-2,
    },
}


# ----------------------------------------------------------- integrals


def boys_f0(t: float) -> float:
    if t < 1e-12:
        return 1.0 - t / 3.0
    return 0.5 * math.sqrt(math.pi / t) * math.erf(math.sqrt(t))


def gaussian_norm(a: float) -> float:
    return (2 * a / math.pi) ** 0.75


def integrals(centers: list[np.ndarray]):
    """AO overlap, core Hamiltonian, ERIs and nuclear repulsion (s functions)."""
    n = len(centers)
    prim = [
        [(a, gaussian_norm(a) * c, centers[i]) for a, c in zip(STO3G_EXP, STO3G_COEF)]
        for i in range(n)
    ]
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            for a, ca, A in prim[i]:
                for b, cb, B in prim[j]:
                    p = a + b
                    ab2 = float(np.dot(A - B, A - B))
                    pre = (math.pi / p) ** 1.5 * math.exp(-a * b / p * ab2)
                    S[i, j] += ca * cb * pre
                    T[i, j] += ca * cb * a * b / p * (3 - 2 * a * b / p * ab2) * pre
                    P = (a * A + b * B) / p
                    for C in centers:  # all nuclei have Z = 1
                        pc2 = float(np.dot(P - C, P - C))
                        V[i, j] -= (
                            ca
                            * cb
                            * 2
                            * math.pi
                            / p
                            * math.exp(-a * b / p * ab2)
                            * boys_f0(p * pc2)
                        )
    eri = np.zeros((n, n, n, n))
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if i < j or k < l or (i, j) < (k, l):
            continue
        val = 0.0
        for a, ca, A in prim[i]:
            for b, cb, B in prim[j]:
                p = a + b
                P = (a * A + b * B) / p
                kab = math.exp(-a * b / p * float(np.dot(A - B, A - B)))
                for c, cc, C in prim[k]:
                    for d, cd, D in prim[l]:
                        q = c + d
                        Q = (c * C + d * D) / q
                        kcd = math.exp(-c * d / q * float(np.dot(C - D, C - D)))
                        t = p * q / (p + q) * float(np.dot(P - Q, P - Q))
                        val += (
                            ca
                            * cb
                            * cc
                            * cd
                            * 2
                            * math.pi**2.5
                            / (p * q * math.sqrt(p + q))
                            * kab
                            * kcd
                            * boys_f0(t)
                        )
        for perm in {
            (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
            (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
        }:
            eri[perm] = val
    e_nuc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            e_nuc += 1.0 / float(np.linalg.norm(centers[i] - centers[j]))
    return S, T + V, eri, e_nuc


# ----------------------------------------------------------------- RHF


def rhf(S, hcore, eri, e_nuc, n_elec, max_iter=400, tol=1e-12):
    n = S.shape[0]
    nocc = n_elec // 2
    s_val, s_vec = np.linalg.eigh(S)
    X = s_vec @ np.diag(s_val**-0.5) @ s_vec.T
    D = np.zeros((n, n))
    e_old = 0.0
    F = hcore
    for it in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = hcore + 2 * J - K
        e_elec = float(np.einsum("pq,pq->", D, hcore + F))
        eps, C_prime = np.linalg.eigh(X.T @ F @ X)
        C = X @ C_prime
        D_new = C[:, :nocc] @ C[:, :nocc].T
        if abs(e_elec - e_old) < tol and np.abs(D_new - D).max() < tol:
            D = D_new
            break
        D = 0.5 * (D + D_new) if it > 60 else D_new  # damp late, if ever needed
        e_old = e_elec
    else:
        raise RuntimeError("SCF did not converge")
    return e_elec + e_nuc, eps, C


# -------------------------------------------------- spin-orbital CCSD


def spin_orbital_tensors(hcore, eri, C, eps):
    """MO-basis one-/two-electron tensors expanded to spin orbitals.

    Spin orbital 2p is alpha, 2p+1 is beta of spatial orbital p; braket
    two-electron integrals are antisymmetrized <pq||rs>.
    """
    n = C.shape[0]
    h_mo = C.T @ hcore @ C
    eri_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", eri, C, C, C, C, optimize=True)
    ns = 2 * n
    h_so = np.zeros((ns, ns))
    f_so = np.zeros((ns, ns))
    for p in range(ns):
        for q in range(ns):
            if p % 2 == q % 2:
                h_so[p, q] = h_mo[p // 2, q // 2]
        f_so[p, p] = eps[p // 2]
    bra = np.zeros((ns, ns, ns, ns))
    for p, q, r, s in itertools.product(range(ns), repeat=4):
        # <pq|rs> = (pr|qs) with matching spins
        direct = (
            eri_mo[p // 2, r // 2, q // 2, s // 2]
            if p % 2 == r % 2 and q % 2 == s % 2
            else 0.0
        )
        exchange = (
            eri_mo[p // 2, s // 2, q // 2, r // 2]
            if p % 2 == s % 2 and q % 2 == r % 2
            else 0.0
        )
        bra[p, q, r, s] = direct - exchange
    return h_so, f_so, bra


def ccsd(f, bra, n_occ, max_iter=200, tol=1e-11):
    """Spin-orbital CCSD amplitudes (standard intermediate formulation)."""
    ns = f.shape[0]
    o = slice(0, n_occ)
    v = slice(n_occ, ns)
    eps = np.diag(f)
    d1 = eps[o][:, None] - eps[v][None, :]
    d2 = (
        eps[o][:, None, None, None]
        + eps[o][None, :, None, None]
        - eps[v][None, None, :, None]
        - eps[v][None, None, None, :]
    )
    t1 = np.zeros((n_occ, ns - n_occ))
    t2 = bra[o, o, v, v] / d2
    e_old = _cc_energy(f, bra, t1, t2, o, v)
    nv = ns - n_occ
    eye_o = np.eye(n_occ)
    eye_v = np.eye(nv)
    for _ in range(max_iter):
        tau_t = t2 + 0.5 * (
            np.einsum("ia,jb->ijab", t1, t1) - np.einsum("ib,ja->ijab", t1, t1)
        )
        tau = t2 + np.einsum("ia,jb->ijab", t1, t1) - np.einsum("ib,ja->ijab", t1, t1)
        Fae = (
            (1 - eye_v) * f[v, v]
            - 0.5 * np.einsum("me,ma->ae", f[o, v], t1)
            + np.einsum("mf,mafe->ae", t1, bra[o, v, v, v])
            - 0.5 * np.einsum("mnaf,mnef->ae", tau_t, bra[o, o, v, v])
        )
        Fmi = (
            (1 - eye_o) * f[o, o]
            + 0.5 * np.einsum("ie,me->mi", t1, f[o, v])
            + np.einsum("ne,mnie->mi", t1, bra[o, o, o, v])
            + 0.5 * np.einsum("inef,mnef->mi", tau_t, bra[o, o, v, v])
        )
        Fme = f[o, v] + np.einsum("nf,mnef->me", t1, bra[o, o, v, v])
        Wmnij = (
            bra[o, o, o, o]
            + np.einsum("je,mnie->mnij", t1, bra[o, o, o, v])
            - np.einsum("ie,mnje->mnij", t1, bra[o, o, o, v])
            + 0.25 * np.einsum("ijef,mnef->mnij", tau, bra[o, o, v, v])
        )
        Wabef = (
            bra[v, v, v, v]
            - np.einsum("mb,amef->abef", t1, bra[v, o, v, v])
            + np.einsum("ma,bmef->abef", t1, bra[v, o, v, v])
            + 0.25 * np.einsum("mnab,mnef->abef", tau, bra[o, o, v, v])
        )
        Wmbej = (
            bra[o, v, v, o]
            + np.einsum("jf,mbef->mbej", t1, bra[o, v, v, v])
            - np.einsum("nb,mnej->mbej", t1, bra[o, o, v, o])
            - np.einsum(
                "jnfb,mnef->mbej",
                0.5 * t2 + np.einsum("jf,nb->jnfb", t1, t1),
                bra[o, o, v, v],
            )
        )
        t1_new = (
            f[o, v]
            + np.einsum("ie,ae->ia", t1, Fae)
            - np.einsum("ma,mi->ia", t1, Fmi)
            + np.einsum("imae,me->ia", t2, Fme)
            - np.einsum("nf,naif->ia", t1, bra[o, v, o, v])
            - 0.5 * np.einsum("imef,maef->ia", t2, bra[o, v, v, v])
            - 0.5 * np.einsum("mnae,nmei->ia", t2, bra[o, o, v, o])
        ) / d1
        P_ab = lambda x: x - x.transpose(0, 1, 3, 2)
        P_ij = lambda x: x - x.transpose(1, 0, 2, 3)
        rhs = bra[o, o, v, v].copy()
        rhs += P_ab(
            np.einsum(
                "ijae,be->ijab",
                t2,
                Fae - 0.5 * np.einsum("mb,me->be", t1, Fme),
            )
        )
        rhs -= P_ij(
            np.einsum(
                "imab,mj->ijab",
                t2,
                Fmi + 0.5 * np.einsum("je,me->mj", t1, Fme),
            )
        )
        rhs += 0.5 * np.einsum("mnab,mnij->ijab", tau, Wmnij)
        rhs += 0.5 * np.einsum("ijef,abef->ijab", tau, Wabef)
        rhs += P_ij(
            P_ab(
                np.einsum("imae,mbej->ijab", t2, Wmbej)
                - np.einsum("ie,ma,mbej->ijab", t1, t1, bra[o, v, v, o])
            )
        )
        rhs += P_ij(np.einsum("ie,abej->ijab", t1, bra[v, v, v, o]))
        rhs -= P_ab(np.einsum("ma,mbij->ijab", t1, bra[o, v, o, o]))
        t2_new = rhs / d2
        e_new = _cc_energy(f, bra, t1_new, t2_new, o, v)
        delta = abs(e_new - e_old)
        t1, t2 = t1_new, t2_new
        e_old = e_new
        if delta < tol:
            return e_new, t1, t2
    raise RuntimeError("CCSD did not converge")


def _cc_energy(f, bra, t1, t2, o, v):
    return float(
        np.einsum("ia,ia->", f[o, v], t1)
        + 0.25 * np.einsum("ijab,ijab->", bra[o, o, v, v], t2)
        + 0.5 * np.einsum("ia,jb,ijab->", t1, t1, bra[o, o, v, v])
    )


# ------------------------------------------------------- Jordan-Wigner

# Pauli terms as {(x_mask, z_mask): complex}; P(x,z) = prod_j X_j^x Z_j^z
# per qubit with X left of Z; bit q = qubit q (mode q).


def pauli_mul(t1, t2, n):
    out = {}
    for (x1, z1), c1 in t1.items():
        for (x2, z2), c2 in t2.items():
            sign = -1.0 if bin(z1 & x2).count("1") % 2 else 1.0
            key = (x1 ^ x2, z1 ^ z2)
            out[key] = out.get(key, 0.0) + sign * c1 * c2
    return {k: v for k, v in out.items() if abs(v) > 1e-14}


def pauli_add(t1, t2):
    out = dict(t1)
    for k, v in t2.items():
        out[k] = out.get(k, 0.0) + v
    return {k: v for k, v in out.items() if abs(v) > 1e-14}


def jw_annihilate(p, n):
    """a_p = Z_0...Z_{p-1} (X_p + iY_p)/2 with Y = i X Z."""
    zstring = (1 << p) - 1  # modes 0..p-1 (bit q = mode q)
    xbit = 1 << p
    return {
        (xbit, zstring): 0.5,
        (xbit, zstring | xbit): -0.5,  # i*Y = i*(i X Z) = -X Z
    }


def jw_create(p, n):
    return {
        (1 << p, (1 << p) - 1): 0.5,
        (1 << p, ((1 << p) - 1) | (1 << p)): 0.5,
    }


def term_to_label(x, z, n):
    """Convert an (x, z) product to a Pauli label and phase factor."""
    label = []
    phase = 1.0 + 0.0j
    for q in range(n):
        bit = 1 << q
        has_x = bool(x & bit)
        has_z = bool(z & bit)
        if has_x and has_z:
            label.append("Y")
            phase *= 1j  # Y = i X Z
        elif has_x:
            label.append("X")
        elif has_z:
            label.append("Z")
        else:
            label.append("I")
    return "".join(label), phase


def jw_hamiltonian(h_so, bra, e_nuc, n):
    """Pauli decomposition of H = e_nuc + sum h a+a + 1/4 sum <pq||rs> a+a+aa."""
    total = {(0, 0): complex(e_nuc)}
    ops_a = [jw_annihilate(p, n) for p in range(n)]
    ops_c = [jw_create(p, n) for p in range(n)]
    for p in range(n):
        for q in range(n):
            if abs(h_so[p, q]) < 1e-12:
                continue
            term = pauli_mul(ops_c[p], ops_a[q], n)
            total = pauli_add(total, {k: h_so[p, q] * v for k, v in term.items()})
    for p, q, r, s in itertools.product(range(n), repeat=4):
        coeff = 0.25 * bra[p, q, r, s]
        if abs(coeff) < 1e-12 or p == q or r == s:
            continue
        term = pauli_mul(
            pauli_mul(ops_c[p], ops_c[q], n), pauli_mul(ops_a[s], ops_a[r], n), n
        )
        total = pauli_add(total, {k: coeff * v for k, v in term.items()})
    return total


def jw_excitation(creates, annihilates, n):
    """i * JW(K - K†) for K = a†_{c1}a†_{c2}... a_{a1}a_{a2}...; real weights.

    K - K† is anti-Hermitian; multiplying by i gives a Hermitian Pauli sum,
    so exp(K - K†) = prod exp(i * w_k * P_k).
    """
    fwd = {(0, 0): 1.0 + 0j}
    for c in creates:
        fwd = pauli_mul(fwd, jw_create(c, n), n)
    for a in annihilates:
        fwd = pauli_mul(fwd, jw_annihilate(a, n), n)
    bwd = {(0, 0): 1.0 + 0j}
    for a in reversed(annihilates):
        bwd = pauli_mul(bwd, jw_create(a, n), n)
    for c in reversed(creates):
        bwd = pauli_mul(bwd, jw_annihilate(c, n), n)
    anti = pauli_add(fwd, {k: -v for k, v in bwd.items()})
    out = []
    for (x, z), coeff in anti.items():
        label, phase = term_to_label(x, z, n)
        weight = 1j * coeff * phase  # i * (K - K†) has real Pauli weights
        assert abs(weight.imag) < 1e-12, (label, weight)
        out.append((label, float(weight.real)))
    return sorted(out)


def dense_from_terms(terms, n):
    idx = np.arange(2**n, dtype=np.int64)
    mat = np.zeros((2**n, 2**n), dtype=complex)

    def parity(vals):
        out = vals.copy()
        shift = 1
        while shift < 64:
            out ^= out >> shift
            shift <<= 1
        return out & 1

    for label, coeff in terms:
        flip = phase = n_y = 0
        for q, ch in enumerate(label):
            bit = 1 << (len(label) - 1 - q)
            if ch in "XY":
                flip |= bit
            if ch in "ZY":
                phase |= bit
            if ch == "Y":
                n_y += 1
        signs = 1.0 - 2.0 * parity(idx & phase)
        mat[idx ^ flip, idx] += coeff * (1j**n_y) * signs
    return mat


# ------------------------------------------------------------ assembly


def build_system(name, cfg):
    centers = [
        np.array(xyz) * ANGSTROM_TO_BOHR for _, xyz in cfg["geometry"]
    ]
    n_atoms = len(centers)
    n_elec = n_atoms
    S, hcore, eri, e_nuc = integrals(centers)
    e_hf, eps, C = rhf(S, hcore, eri, e_nuc, n_elec)
    h_so, f_so, bra = spin_orbital_tensors(hcore, eri, C, eps)
    ns = 2 * S.shape[0]
    n_occ = n_elec
    e_corr, t1, t2 = ccsd(f_so, bra, n_occ)
    e_ccsd = e_hf + e_corr

    # Hamiltonian Pauli terms (JW; mode q = qubit q = label position q)
    pauli_h = jw_hamiltonian(h_so, bra, e_nuc, ns)
    terms = []
    for (x, z), coeff in sorted(pauli_h.items()):
        label, phase = term_to_label(x, z, ns)
        val = coeff * phase
        assert abs(val.imag) < 1e-10, (label, val)
        if abs(val.real) > 1e-10:
            terms.append((label, float(val.real)))
    terms.sort(key=lambda t: (-abs(t[1]), t[0]))

    # Exact ground energy by dense diagonalization
    e_exact = float(np.linalg.eigvalsh(dense_from_terms(terms, ns))[0])

    # UCCSD generators from CCSD amplitudes above the cutoff
    cutoff = cfg["amplitude_cutoff"]
    nv = ns - n_occ
    excitations = []
    for i in range(n_occ):
        for a in range(nv):
            if abs(t1[i, a]) > cutoff:
                excitations.append((abs(t1[i, a]), ((n_occ + a,), (i,)), t1[i, a]))
    for i in range(n_occ):
        for j in range(i + 1, n_occ):
            for a in range(nv):
                for b in range(a + 1, nv):
                    amp = t2[i, j, a, b]
                    if abs(amp) > cutoff:
                        excitations.append(
                            (abs(amp), ((n_occ + a, n_occ + b), (j, i)), amp)
                        )
    excitations.sort(key=lambda e: (-e[0], e[1]))
    generators = []
    for _, (creates, annihilates), amp in excitations:
        for label, weight in jw_excitation(creates, annihilates, ns):
            generators.append((label, float(weight * amp)))

    meta_common = {
        "system": name.upper(),
        "description": cfg["description"],
        "geometry_angstrom": [
            [el, list(xyz)] for el, xyz in cfg["geometry"]
        ],
        "basis": "STO-3G",
        "mapping": "Jordan-Wigner",
        "n_electrons": n_elec,
        "e_nuclear_ha": e_nuc,
        "e_hf_ha": e_hf,
        "e_ccsd_ha": e_ccsd,
        "e_exact_ha": e_exact,
    }
    ham_json = {
        "n_qubits": ns,
        "terms": [{"pauli": p, "coeff": c} for p, c in terms],
        "meta": dict(meta_common, n_terms=len(terms)),
    }
    gen_json = {
        "n_qubits": ns,
        "generators": [{"pauli": p, "angle": a} for p, a in generators],
        "meta": dict(
            meta_common,
            source="CCSD amplitudes",
            amplitude_cutoff=cutoff,
            n_excitations=len(excitations),
            l_rotations=len(generators),
            trotter="first order, descending amplitude magnitude",
        ),
    }
    return ham_json, gen_json


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, cfg in SYSTEMS.items():
        ham, gen = build_system(name, cfg)
        (OUT_DIR / f"{name}_hamiltonian.json").write_text(
            json.dumps(ham, indent=1, sort_keys=True)
        )
        (OUT_DIR / f"{name}_generators.json").write_text(
            json.dumps(gen, indent=1, sort_keys=True)
        )
        m = ham["meta"]
        print(
            f"{name}: qubits={ham['n_qubits']} terms={m['n_terms']} "
            f"L={gen['meta']['l_rotations']} "
            f"E_hf={m['e_hf_ha']:.6f} E_ccsd={m['e_ccsd_ha']:.6f} "
            f"E_exact={m['e_exact_ha']:.6f}"
        )


if __name__ == "__main__":
    sys.exit(main())
