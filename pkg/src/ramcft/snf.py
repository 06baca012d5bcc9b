"""Smith normal form over the integers with unimodular transforms."""


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V = D diagonal, d_1 | d_2 | ..., d_i >= 0."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        if c:
            A[dst] = [a - c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        if c:
            for r in A:
                r[dst] -= c * r[src]
            for r in V:
                r[dst] -= c * r[src]

    k = 0
    while k < min(m, n):
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        while True:
            done = True
            for i in range(k + 1, m):
                if A[i][k]:
                    add_row(k, i, A[i][k] // A[k][k])
                    if A[i][k]:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, n):
                if A[k][j]:
                    add_col(k, j, A[k][j] // A[k][k])
                    if A[k][j]:
                        swap_cols(k, j)
                        done = False
            if not done:
                continue
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if A[i][j] % A[k][k]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, k, -1)
        if A[k][k] < 0:
            A[k] = [-a for a in A[k]]
            U[k] = [-a for a in U[k]]
        k += 1
    return U, A, V


def invariant_factors(M):
    """Nontrivial invariant factors and free rank of Z^n / rowspace(M)."""
    n = len(M[0]) if M else 0
    if not M:
        return [], n
    _, D, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), n))]
    rank = sum(1 for d in diag if d)
    return [d for d in diag if d > 1], n - rank


def inverse_unimodular(V):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(V)
    A = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(V)]
    for c in range(n):
        while True:
            rows = [r for r in range(c, n) if A[r][c]]
            if not rows:
                raise ValueError("singular matrix")
            r0 = min(rows, key=lambda r: abs(A[r][c]))
            A[c], A[r0] = A[r0], A[c]
            more = False
            for r in range(c + 1, n):
                if A[r][c]:
                    q = A[r][c] // A[c][c]
                    A[r] = [a - q * b for a, b in zip(A[r], A[c])]
                    if A[r][c]:
                        more = True
            if not more:
                break
        if abs(A[c][c]) != 1:
            raise ValueError("matrix is not unimodular")
        if A[c][c] == -1:
            A[c] = [-a for a in A[c]]
    for c in range(n - 1, -1, -1):
        for r in range(c):
            if A[r][c]:
                q = A[r][c]
                A[r] = [a - q * b for a, b in zip(A[r], A[c])]
    return [r[n:] for r in A]
