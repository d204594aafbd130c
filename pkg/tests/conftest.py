from hypothesis import strategies as st

from quotients.messages import Crypt, Decrypt, MPair, Nonce


def term_strategy(max_key: int = 2, max_nonce: int = 3, max_leaves: int = 12):
    """Random free message terms with small key/nonce domains."""
    return st.recursive(
        st.integers(0, max_nonce).map(Nonce),
        lambda sub: st.one_of(
            st.tuples(sub, sub).map(lambda p: MPair(p[0], p[1])),
            st.tuples(st.integers(0, max_key), sub).map(lambda p: Crypt(p[0], p[1])),
            st.tuples(st.integers(0, max_key), sub).map(lambda p: Decrypt(p[0], p[1])),
        ),
        max_leaves=max_leaves,
    )
