# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled entropy kernels; reference semantics live in ``_kernels_py``."""

from libc.math cimport log

cdef double PROB_FLOOR = 1e-15


def spectrum_entropy_terms(const double[::1] values, const double[::1] multiplicities,
                           double inv_ln_base):
    cdef Py_ssize_t i, n = values.shape[0]
    cdef double acc = 0.0, p
    with nogil:
        for i in range(n):
            p = values[i]
            if p > PROB_FLOOR:
                acc -= multiplicities[i] * p * log(p)
    return acc * inv_ln_base


def block_family_entropy(const double[::1] a_sub, double mu1,
                         const double[::1] inv_norm_b, const double[::1] inv_norm_e,
                         double inv_ln_base, double[::1] out_b, double[::1] out_e,
                         Py_ssize_t j):
    cdef Py_ssize_t b1, r
    cdef Py_ssize_t m = inv_norm_b.shape[0], n = a_sub.shape[0]
    cdef double x0, x, p, acc_b, acc_e, inb, ine
    with nogil:
        for b1 in range(m):
            x0 = mu1 * b1
            inb = inv_norm_b[b1]
            ine = inv_norm_e[b1]
            acc_b = 0.0
            acc_e = 0.0
            for r in range(n):
                x = x0 + a_sub[r]
                p = x * inb
                if p > PROB_FLOOR:
                    acc_b -= p * log(p)
                p = (x + 1.0) * ine
                if p > PROB_FLOOR:
                    acc_e -= p * log(p)
            out_b[j + b1] += acc_b * inv_ln_base
            out_e[j + b1 + 1] += acc_e * inv_ln_base
