"""Pure-Python search kernel; the compiled ``_kernels`` module mirrors it."""


class SearchKernel:
    """Left-first search and decreasing-cycle verification over flat arrays.

    Turns are read off dart directions, so the representation must satisfy
    the local angle conditions.
    """

    def __init__(self, n, tail, head, rot_ptr, rot, pos, dirs, face_of, face_ptr, face_darts, outer, central, ref):
        self.n = n
        self.m2 = len(tail)
        self.tail = tail
        self.head = head
        self.rot_ptr = rot_ptr
        self.rot = rot
        self.pos = pos
        self.dirs = dirs
        self.face_of = face_of
        self.face_ptr = face_ptr
        self.face_darts = face_darts
        self.n_faces = len(face_ptr) - 1
        self.outer = outer
        self.central = central
        self.ref = ref
        self.vmark = [0] * n
        self.vstamp = 0
        self.ref_of = [0] * n
        self.lab = [0] * n
        self.it = [0] * n
        self.fmark = [0] * self.n_faces
        self.fstamp = 0
        self.emark = [0] * (self.m2 // 2)
        self.estamp = 0
        self.parent = [0] * n

    def turn(self, a, b):
        if b == a ^ 1:
            return -2
        return ((self.dirs[b] - self.dirs[a] + 1) & 3) - 1

    def dfs(self, start):
        """Left-first DFS from ``start``; returns ``(cycle, search_labels)`` or None."""
        tail, head, rot_ptr, rot, pos, dirs = self.tail, self.head, self.rot_ptr, self.rot, self.pos, self.dirs
        vmark, ref_of, lab, it = self.vmark, self.ref_of, self.lab, self.it
        self.vstamp += 1
        stamp = self.vstamp
        v = tail[start]
        w = head[start]
        vmark[w] = stamp
        ref_of[w] = start
        lab[w] = 0
        it[w] = 1
        stack = [w]
        while stack:
            x = stack[-1]
            lo = rot_ptr[x]
            deg = rot_ptr[x + 1] - lo
            i = it[x]
            if i >= deg:
                stack.pop()
                continue
            it[x] = i + 1
            r = ref_of[x]
            e = rot[lo + (pos[r ^ 1] + i) % deg]
            t = ((dirs[e] - dirs[r] + 1) & 3) - 1
            le = lab[x] + t
            if le < 0:
                continue
            y = head[e]
            if y == v:
                cyc = [e]
                sl = [le]
                while x != w:
                    cyc.append(ref_of[x])
                    sl.append(lab[x])
                    x = tail[ref_of[x]]
                cyc.append(start)
                sl.append(0)
                cyc.reverse()
                sl.reverse()
                return cyc, sl
            if vmark[y] == stamp:
                continue
            vmark[y] = stamp
            ref_of[y] = e
            lab[y] = le
            it[y] = 1
            stack.append(y)
        return None

    def is_essential(self, cycle):
        """Whether the closed walk has the central face on its right and the outer face on its left."""
        if self.outer == self.central:
            return False
        face_of, face_ptr, face_darts, fmark, emark = self.face_of, self.face_ptr, self.face_darts, self.fmark, self.emark
        self.estamp += 1
        es = self.estamp
        for d in cycle:
            emark[d >> 1] = es
        self.fstamp += 1
        fs = self.fstamp
        fmark[self.central] = fs
        queue = [self.central]
        qi = 0
        while qi < len(queue):
            f = queue[qi]
            qi += 1
            for j in range(face_ptr[f], face_ptr[f + 1]):
                d = face_darts[j]
                if emark[d >> 1] == es:
                    continue
                h = face_of[d ^ 1]
                if fmark[h] != fs:
                    if h == self.outer:
                        return False
                    fmark[h] = fs
                    queue.append(h)
        return fmark[face_of[cycle[0]]] == fs

    def labels(self, cycle):
        """Labels of an essential simple cycle.

        The path starts at ``tail(ref)``, entered from the outer face just
        left of ``ref``; its first dart ``q`` contributes ``dirs[q]``.
        """
        tail, head, rot_ptr, rot, dirs = self.tail, self.head, self.rot_ptr, self.rot, self.dirs
        vmark, parent = self.vmark, self.parent
        self.vstamp += 1
        on = self.vstamp
        for d in cycle:
            vmark[tail[d]] = on
        t = tail[self.ref]
        k = len(cycle)
        path = []
        if vmark[t] == on:
            target = t
        else:
            self.vstamp += 1
            seen = self.vstamp
            vmark[t] = seen
            queue = [t]
            qi = 0
            target = -1
            while qi < len(queue) and target < 0:
                x = queue[qi]
                qi += 1
                for j in range(rot_ptr[x], rot_ptr[x + 1]):
                    d = rot[j]
                    y = head[d]
                    if vmark[y] == on:
                        parent[y] = d
                        target = y
                        break
                    if vmark[y] != seen:
                        vmark[y] = seen
                        parent[y] = d
                        queue.append(y)
            if target < 0:
                raise RuntimeError("cycle unreachable from the reference edge")
            y = target
            while y != t:
                d = parent[y]
                path.append(d)
                y = tail[d]
            path.reverse()
        i0 = 0
        while tail[cycle[i0]] != target:
            i0 += 1
        path.append(cycle[i0])
        prev = path[0]
        cur = dirs[prev]
        for d in path[1:]:
            cur += self.turn(prev, d)
            prev = d
        out = [0] * k
        out[i0] = cur
        for step in range(1, k):
            i = (i0 + step) % k
            cur += self.turn(cycle[i - 1], cycle[i])
            out[i] = cur
        return out

    def check_decreasing(self, cycle, slabels, reverse):
        """Verify a search candidate; with ``reverse`` the reversed cycle is tested."""
        total = slabels[-1] + self.turn(cycle[-1], cycle[0])
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

    def search_from(self, start, reverse=False):
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
