"""Independent reference computations for the tests.

Nothing here touches the eightcolor package; everything is plain lists.
"""


def naive_product(k, N):
    """prod_{j>=1} (1 - q^{kj}) expanded factor by factor to order N."""
    coeffs = [1] + [0] * N
    j = 1
    while k * j <= N:
        step = k * j
        for n in range(N, step - 1, -1):
            coeffs[n] -= coeffs[n - step]
        j += 1
    return coeffs


def brute_convolution(a, b, N):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(N + 1)]


def partition_counts(n_max):
    """Ordinary partition numbers by the coin-change recurrence."""
    table = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            table[n] += table[n - part]
    return table


def pentagonal_set(limit):
    """{k(3k-1)/2 : k in Z} intersected with [0, limit]."""
    out = set()
    k = 0
    while k * (3 * k - 1) // 2 <= limit:
        out.add(k * (3 * k - 1) // 2)
        out.add(k * (3 * k + 1) // 2)
        k += 1
    return {n for n in out if n <= limit}


def m_table_dense(rows, cols):
    """m_{j,k} from the defining rules alone, as a dense (rows+1) x (cols+2) grid."""
    m = [[0] * (cols + 2) for _ in range(rows + 1)]
    m[1][1] = 8
    if rows >= 2:
        m[2][1], m[2][2] = 1, 128
    for j in range(3, rows + 1):
        for k in range(2, cols + 1):
            m[j][k] = 16 * m[j - 1][k - 1] + m[j - 2][k - 1]
    return m


def x_table_full_sum(alpha_max):
    """x_{alpha,j} summing over every i up to the vanishing bound, no window."""
    def bound(a):
        return (2 ** (a + 1) - 1) // 3 if a % 2 else (2 ** (a + 1) - 2) // 3

    rows_needed = 3 * bound(alpha_max) + 2
    m = m_table_dense(rows_needed, rows_needed)
    x = {1: [0, 8]}
    for a in range(1, alpha_max):
        offset = 0 if a % 2 else 1
        prev = x[a]
        row = [0]
        for j in range(1, bound(a + 1) + 1):
            total = 0
            for i in range(1, len(prev)):
                r, c = 3 * i + offset, i + j
                if r <= rows_needed and c <= rows_needed:
                    total += prev[i] * m[r][c]
            row.append(total)
        x[a + 1] = row
    return x
