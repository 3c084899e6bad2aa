# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; behaviour matches ``_kernels_py`` exactly."""

from array import array


cdef inline int _turn(int[:] dirs, int a, int b) nogil:
    if b == (a ^ 1):
        return -2
    return ((dirs[b] - dirs[a] + 1) & 3) - 1


def _ints(seq):
    return array("i", seq)


cdef class SearchKernel:
    cdef public int n, m2, n_faces, outer, central, ref
    cdef int[:] tail, head, rot_ptr, rot, pos, dirs, face_of, face_ptr, face_darts
    cdef int[:] vmark, ref_of, lab, it, fmark, emark, parent, stack, queue
    cdef int vstamp, fstamp, estamp

    def __init__(self, n, tail, head, rot_ptr, rot, pos, dirs, face_of, face_ptr, face_darts, outer, central, ref):
        self.n = n
        self.m2 = len(tail)
        self.tail = _ints(tail)
        self.head = _ints(head)
        self.rot_ptr = _ints(rot_ptr)
        self.rot = _ints(rot)
        self.pos = _ints(pos)
        self.dirs = _ints(dirs)
        self.face_of = _ints(face_of)
        self.face_ptr = _ints(face_ptr)
        self.face_darts = _ints(face_darts)
        self.n_faces = len(face_ptr) - 1
        self.outer = outer
        self.central = central
        self.ref = ref
        self.vmark = array("i", [0]) * max(n, 1)
        self.ref_of = array("i", [0]) * max(n, 1)
        self.lab = array("i", [0]) * max(n, 1)
        self.it = array("i", [0]) * max(n, 1)
        self.parent = array("i", [0]) * max(n, 1)
        self.stack = array("i", [0]) * max(n, 1)
        self.queue = array("i", [0]) * max(n, self.n_faces, 1)
        self.fmark = array("i", [0]) * max(self.n_faces, 1)
        self.emark = array("i", [0]) * max(self.m2 // 2, 1)
        self.vstamp = 0
        self.fstamp = 0
        self.estamp = 0

    def turn(self, int a, int b):
        return _turn(self.dirs, a, b)

    def dfs(self, int start):
        """Left-first DFS from ``start``; returns ``(cycle, search_labels)`` or None."""
        cdef int v, w, x, y, lo, deg, i, r, e, t, le, sp, stamp
        self.vstamp += 1
        stamp = self.vstamp
        v = self.tail[start]
        w = self.head[start]
        self.vmark[w] = stamp
        self.ref_of[w] = start
        self.lab[w] = 0
        self.it[w] = 1
        self.stack[0] = w
        sp = 1
        while sp > 0:
            x = self.stack[sp - 1]
            lo = self.rot_ptr[x]
            deg = self.rot_ptr[x + 1] - lo
            i = self.it[x]
            if i >= deg:
                sp -= 1
                continue
            self.it[x] = i + 1
            r = self.ref_of[x]
            e = self.rot[lo + (self.pos[r ^ 1] + i) % deg]
            t = ((self.dirs[e] - self.dirs[r] + 1) & 3) - 1
            le = self.lab[x] + t
            if le < 0:
                continue
            y = self.head[e]
            if y == v:
                cyc = [e]
                sl = [le]
                while x != w:
                    cyc.append(self.ref_of[x])
                    sl.append(self.lab[x])
                    x = self.tail[self.ref_of[x]]
                cyc.append(start)
                sl.append(0)
                cyc.reverse()
                sl.reverse()
                return cyc, sl
            if self.vmark[y] == stamp:
                continue
            self.vmark[y] = stamp
            self.ref_of[y] = e
            self.lab[y] = le
            self.it[y] = 1
            self.stack[sp] = y
            sp += 1
        return None

    def is_essential(self, cycle):
        """Whether the closed walk has the central face on its right and the outer face on its left."""
        cdef int es, fs, f, h, j, d, qh, qt
        if self.outer == self.central:
            return False
        self.estamp += 1
        es = self.estamp
        for d in cycle:
            self.emark[d >> 1] = es
        self.fstamp += 1
        fs = self.fstamp
        self.fmark[self.central] = fs
        self.queue[0] = self.central
        qh = 0
        qt = 1
        while qh < qt:
            f = self.queue[qh]
            qh += 1
            for j in range(self.face_ptr[f], self.face_ptr[f + 1]):
                d = self.face_darts[j]
                if self.emark[d >> 1] == es:
                    continue
                h = self.face_of[d ^ 1]
                if self.fmark[h] != fs:
                    if h == self.outer:
                        return False
                    self.fmark[h] = fs
                    self.queue[qt] = h
                    qt += 1
        return self.fmark[self.face_of[cycle[0]]] == fs

    def labels(self, cycle):
        """Labels of an essential simple cycle.

        The path starts at ``tail(ref)``, entered from the outer face just
        left of ``ref``; its first dart ``q`` contributes ``dirs[q]``.
        """
        cdef int on, seen, t, k, target, x, y, d, j, qh, qt, i0, cur, prev, i, step
        self.vstamp += 1
        on = self.vstamp
        for d in cycle:
            self.vmark[self.tail[d]] = on
        t = self.tail[self.ref]
        k = len(cycle)
        path = []
        if self.vmark[t] == on:
            target = t
        else:
            self.vstamp += 1
            seen = self.vstamp
            self.vmark[t] = seen
            self.queue[0] = t
            qh = 0
            qt = 1
            target = -1
            while qh < qt and target < 0:
                x = self.queue[qh]
                qh += 1
                for j in range(self.rot_ptr[x], self.rot_ptr[x + 1]):
                    d = self.rot[j]
                    y = self.head[d]
                    if self.vmark[y] == on:
                        self.parent[y] = d
                        target = y
                        break
                    if self.vmark[y] != seen:
                        self.vmark[y] = seen
                        self.parent[y] = d
                        self.queue[qt] = y
                        qt += 1
            if target < 0:
                raise RuntimeError("cycle unreachable from the reference edge")
            y = target
            while y != t:
                d = self.parent[y]
                path.append(d)
                y = self.tail[d]
            path.reverse()
        i0 = 0
        while self.tail[cycle[i0]] != target:
            i0 += 1
        path.append(cycle[i0])
        prev = path[0]
        cur = self.dirs[prev]
        for d in path[1:]:
            cur += _turn(self.dirs, prev, d)
            prev = d
        out = [0] * k
        out[i0] = cur
        for step in range(1, k):
            i = (i0 + step) % k
            cur += _turn(self.dirs, cycle[i - 1 if i > 0 else k - 1], cycle[i])
            out[i] = cur
        return out

    def check_decreasing(self, cycle, slabels, reverse):
        """Verify a search candidate; with ``reverse`` the reversed cycle is tested."""
        k = len(cycle)
        total = slabels[k - 1] + _turn(self.dirs, cycle[k - 1], cycle[0])
        if total != 0:
            return None
        if reverse:
            cycle = [d ^ 1 for d in reversed(cycle)]
        if not self.is_essential(cycle):
            return None
        lab = self.labels(cycle)
        if min(lab) >= 0 and max(lab) > 0:
            return cycle
        return None

    def search_from(self, int start, reverse=False):
        found = self.dfs(start)
        if found is None:
            return None
        return self.check_decreasing(found[0], found[1], reverse)

    def find_decreasing(self, starts=None):
        if starts is None:
            starts = range(self.m2)
        for d in starts:
            cyc = self.search_from(d, False)
            if cyc is not None:
                return cyc
        return None
