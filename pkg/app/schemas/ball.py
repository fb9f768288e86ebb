from pydantic import BaseModel, Field
from typing import Annotated, List, Literal, Tuple, Union
from app.models.ball import INF, LpBall, PolygonBall, UnitBall


class LpBallSchema(BaseModel):
    """
    Fragmento JSON de una bola ℓp.
    - `p`: real >= 1 o la cadena "inf" (JSON no admite infinito).
    """

    type: Literal["lp"] = "lp"
    p: Union[float, Literal["inf"]] = Field(..., description="Exponente p >= 1 o 'inf'")

    def to_model(self) -> LpBall:
        return LpBall(self.p)


class PolygonBallSchema(BaseModel):
    """
    Fragmento JSON de una bola poligonal.
    - `vertices`: en sentido antihorario y simétricos respecto al origen (v[k + n/2] = −v[k]).
    """

    type: Literal["polygon"] = "polygon"
    vertices: List[Tuple[float, float]] = Field(..., min_length=4)

    def to_model(self) -> PolygonBall:
        return PolygonBall(tuple(self.vertices))


BallSchema = Annotated[Union[LpBallSchema, PolygonBallSchema], Field(discriminator="type")]


def ball_to_schema(B: UnitBall) -> Union[LpBallSchema, PolygonBallSchema]:
    if isinstance(B, LpBall):
        return LpBallSchema(p=INF if B.is_inf else B.p)
    return PolygonBallSchema(vertices=[tuple(v) for v in B.vertex_array.tolist()])
